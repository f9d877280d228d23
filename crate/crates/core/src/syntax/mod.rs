//! Multi-sorted partial Horn logic: signatures, terms, Horn formulas,
//! sequents and theories, plus the textual `.phl` format.
//!
//! Symbols and sorts are referred to by index into their [`Signature`];
//! variables are referred to by position in the enclosing context. Names are
//! kept only for parsing and printing.

mod morphism;
mod parser;
mod printer;
mod relative;
mod validate;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

pub use morphism::{translate_along, TheoryMorphism, Translate};
pub use parser::{parse_document, parse_document_with, parse_sequents, parse_theory, Document, Item, ParseError};
pub use printer::{formula_to_string, sequent_to_string, term_to_string};
pub use relative::{check_relative_judgment, premise_preimage, JudgmentKind, Operation, RelativeTheory};
pub use validate::{validate_theory, Violation, WellFormedness};

pub type SortId = usize;
pub type FuncId = usize;
pub type RelId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FuncSymbol {
    pub name: String,
    pub args: Vec<SortId>,
    pub result: SortId,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelSymbol {
    pub name: String,
    pub args: Vec<SortId>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Signature {
    pub sorts: Vec<String>,
    pub functions: Vec<FuncSymbol>,
    pub relations: Vec<RelSymbol>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_sorts<I, S>(sorts: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Signature {
            sorts: sorts.into_iter().map(Into::into).collect(),
            ..Default::default()
        }
    }

    pub fn add_function(&mut self, name: impl Into<String>, args: Vec<SortId>, result: SortId) -> FuncId {
        self.functions.push(FuncSymbol { name: name.into(), args, result });
        self.functions.len() - 1
    }

    pub fn add_relation(&mut self, name: impl Into<String>, args: Vec<SortId>) -> RelId {
        self.relations.push(RelSymbol { name: name.into(), args });
        self.relations.len() - 1
    }

    pub fn sort_id(&self, name: &str) -> Option<SortId> {
        self.sorts.iter().position(|s| s == name)
    }

    pub fn function_id(&self, name: &str) -> Option<FuncId> {
        self.functions.iter().position(|f| f.name == name)
    }

    pub fn relation_id(&self, name: &str) -> Option<RelId> {
        self.relations.iter().position(|r| r.name == name)
    }

    /// Violations of the signature invariants: unique symbol names, declared
    /// arity sorts, no relation called `=`.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for s in &self.sorts {
            if !seen.insert(s.as_str()) {
                out.push(format!("duplicate sort `{s}`"));
            }
        }
        let mut names = BTreeSet::new();
        let symbols = self
            .functions
            .iter()
            .map(|f| (&f.name, f.args.iter().chain(std::iter::once(&f.result)).copied().collect::<Vec<_>>()))
            .chain(self.relations.iter().map(|r| (&r.name, r.args.clone())));
        for (name, sorts) in symbols {
            if !names.insert(name.as_str()) {
                out.push(format!("duplicate symbol `{name}`"));
            }
            if name == "=" {
                out.push("`=` cannot be declared as a symbol".to_string());
            }
            if let Some(bad) = sorts.iter().find(|&&s| s >= self.sorts.len()) {
                out.push(format!("symbol `{name}` uses undeclared sort #{bad}"));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Variable {
    pub name: String,
    pub sort: SortId,
}

impl Variable {
    pub fn new(name: impl Into<String>, sort: SortId) -> Self {
        Variable { name: name.into(), sort }
    }
}

pub type Context = Vec<Variable>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    /// Position in the enclosing context.
    Var(usize),
    App(FuncId, Vec<Term>),
}

impl Term {
    pub fn app(f: FuncId, args: Vec<Term>) -> Self {
        Term::App(f, args)
    }

    pub fn constant(f: FuncId) -> Self {
        Term::App(f, Vec::new())
    }

    pub fn for_each_function(&self, visit: &mut impl FnMut(FuncId)) {
        if let Term::App(f, args) = self {
            visit(*f);
            for a in args {
                a.for_each_function(visit);
            }
        }
    }

    pub fn for_each_var(&self, visit: &mut impl FnMut(usize)) {
        match self {
            Term::Var(i) => visit(*i),
            Term::App(_, args) => args.iter().for_each(|a| a.for_each_var(visit)),
        }
    }

    /// The sort of the term, or a description of why it has none.
    pub fn sort(&self, sig: &Signature, ctx: &[Variable]) -> Result<SortId, String> {
        match self {
            Term::Var(i) => ctx.get(*i).map(|v| v.sort).ok_or_else(|| format!("unbound variable #{i}")),
            Term::App(f, args) => {
                let sym = sig.functions.get(*f).ok_or_else(|| format!("unknown function symbol #{f}"))?;
                if sym.args.len() != args.len() {
                    return Err(format!(
                        "arity mismatch: `{}` expects {} arguments, got {}",
                        sym.name,
                        sym.args.len(),
                        args.len()
                    ));
                }
                for (i, (a, &want)) in args.iter().zip(&sym.args).enumerate() {
                    let got = a.sort(sig, ctx)?;
                    if got != want {
                        return Err(format!(
                            "arity mismatch: argument {} of `{}` has sort `{}`, expected `{}`",
                            i + 1,
                            sym.name,
                            sort_name(sig, got),
                            sort_name(sig, want)
                        ));
                    }
                }
                Ok(sym.result)
            }
        }
    }
}

fn sort_name(sig: &Signature, s: SortId) -> &str {
    sig.sorts.get(s).map(String::as_str).unwrap_or("?")
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Rel(RelId, Vec<Term>),
    Eq(Term, Term),
    Top,
    And(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    /// Left-nested conjunction; `Top` for an empty list.
    pub fn conj(parts: impl IntoIterator<Item = Formula>) -> Self {
        let mut it = parts.into_iter();
        match it.next() {
            None => Formula::Top,
            Some(first) => it.fold(first, Formula::and),
        }
    }

    /// `t↓`, i.e. `t = t`.
    pub fn defined(t: Term) -> Self {
        Formula::Eq(t.clone(), t)
    }

    pub fn for_each_term(&self, visit: &mut impl FnMut(&Term)) {
        match self {
            Formula::Rel(_, args) => args.iter().for_each(visit),
            Formula::Eq(a, b) => {
                visit(a);
                visit(b);
            }
            Formula::Top => {}
            Formula::And(a, b) => {
                a.for_each_term(visit);
                b.for_each_term(visit);
            }
        }
    }

    pub fn for_each_relation(&self, visit: &mut impl FnMut(RelId)) {
        match self {
            Formula::Rel(r, _) => visit(*r),
            Formula::And(a, b) => {
                a.for_each_relation(visit);
                b.for_each_relation(visit);
            }
            _ => {}
        }
    }

    pub fn functions(&self) -> BTreeSet<FuncId> {
        let mut out = BTreeSet::new();
        self.for_each_term(&mut |t| t.for_each_function(&mut |f| {
            out.insert(f);
        }));
        out
    }

    pub fn relations(&self) -> BTreeSet<RelId> {
        let mut out = BTreeSet::new();
        self.for_each_relation(&mut |r| {
            out.insert(r);
        });
        out
    }
}

/// `premise ⊢_context conclusion`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HornSequent {
    pub context: Context,
    pub premise: Formula,
    pub conclusion: Formula,
}

impl HornSequent {
    pub fn new(context: Context, premise: Formula, conclusion: Formula) -> Self {
        HornSequent { context, premise, conclusion }
    }

    /// Function and relation symbols mentioned anywhere in the sequent.
    pub fn symbols(&self) -> (BTreeSet<FuncId>, BTreeSet<RelId>) {
        let mut funcs = self.premise.functions();
        funcs.extend(self.conclusion.functions());
        let mut rels = self.premise.relations();
        rels.extend(self.conclusion.relations());
        (funcs, rels)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormulaInContext {
    pub context: Context,
    pub formula: Formula,
}

/// Opt-in capabilities a theory declares about its category of models.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoryFlag {
    /// Coproducts are computed by sort-wise disjoint union.
    DisjointUnion,
    /// Local retractions are exactly the surjections.
    ExactSurjective,
    /// Local retractions are the surjections that merge no two constants.
    ExactConstants,
}

impl TheoryFlag {
    pub const ALL: [TheoryFlag; 3] = [TheoryFlag::DisjointUnion, TheoryFlag::ExactSurjective, TheoryFlag::ExactConstants];

    pub fn keyword(self) -> &'static str {
        match self {
            TheoryFlag::DisjointUnion => "disjoint_union",
            TheoryFlag::ExactSurjective => "exact_surjective",
            TheoryFlag::ExactConstants => "exact_constants",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.keyword() == s)
    }
}

impl fmt::Display for TheoryFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theory {
    pub name: String,
    pub signature: Arc<Signature>,
    pub axioms: Vec<HornSequent>,
    pub flags: BTreeSet<TheoryFlag>,
}

impl Theory {
    pub fn new(name: impl Into<String>, signature: Signature) -> Self {
        Theory {
            name: name.into(),
            signature: Arc::new(signature),
            axioms: Vec::new(),
            flags: BTreeSet::new(),
        }
    }

    pub fn with_axioms(mut self, axioms: Vec<HornSequent>) -> Self {
        self.axioms = axioms;
        self
    }

    pub fn with_flag(mut self, flag: TheoryFlag) -> Self {
        self.flags.insert(flag);
        self
    }

    pub fn has_flag(&self, flag: TheoryFlag) -> bool {
        self.flags.contains(&flag)
    }

    pub fn sig(&self) -> &Signature {
        &self.signature
    }
}
