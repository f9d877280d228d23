use std::sync::Arc;

use super::{FormulaInContext, Formula, HornSequent, Signature, SortId, Term, Theory, TheoryMorphism, Variable};
use crate::error::{Error, Result};

/// An operation `ω` of a relative signature: defined exactly on the tuples
/// satisfying its arity formula.
#[derive(Clone, Debug, PartialEq)]
pub struct Operation {
    pub name: String,
    pub arity: FormulaInContext,
    pub result: SortId,
}

/// Operations and judgments layered over a base theory.
#[derive(Clone, Debug, PartialEq)]
pub struct RelativeTheory {
    pub name: String,
    pub base: Arc<Theory>,
    pub operations: Vec<Operation>,
    pub judgments: Vec<HornSequent>,
}

impl RelativeTheory {
    pub fn new(name: impl Into<String>, base: Arc<Theory>) -> Self {
        RelativeTheory { name: name.into(), base, operations: Vec::new(), judgments: Vec::new() }
    }

    /// Base signature extended by one function symbol per operation, in
    /// declaration order after the base functions.
    pub fn combined_signature(&self) -> Signature {
        let mut sig = self.base.sig().clone();
        for op in &self.operations {
            let args = op.arity.context.iter().map(|v| v.sort).collect();
            sig.add_function(op.name.clone(), args, op.result);
        }
        sig
    }

    /// Index of the first judgment whose premise mentions an operation.
    pub fn non_relative_judgment(&self) -> Option<usize> {
        let first_op = self.base.sig().functions.len();
        self.judgments.iter().position(|j| j.premise.functions().iter().any(|&f| f >= first_op))
    }

    /// The partial Horn theory whose models are the algebras: the base axioms,
    /// `ω(x̄)↓ ⊣⊢ ar(ω)` as two sequents per operation, then the judgments.
    pub fn compile(&self) -> Result<Theory> {
        let base = self.base.sig();
        for op in &self.operations {
            if base.function_id(&op.name).is_some() || base.relation_id(&op.name).is_some() {
                return Err(Error::NameClash(format!("operation `{}` is already a base symbol", op.name)));
            }
            if op.arity.formula.functions().iter().any(|&f| f >= base.functions.len()) {
                return Err(Error::IllFormed(format!("arity of `{}` mentions an operation", op.name)));
            }
        }
        let sig = self.combined_signature();
        if let Some(v) = sig.violations().into_iter().next() {
            return Err(Error::NameClash(v));
        }
        if let Some(i) = self.non_relative_judgment() {
            return Err(Error::IllFormed(format!("judgment {} mentions an operation in its premise", i + 1)));
        }
        let mut axioms = self.base.axioms.clone();
        for (i, op) in self.operations.iter().enumerate() {
            let f = base.functions.len() + i;
            let vars = (0..op.arity.context.len()).map(Term::Var).collect();
            let defined = Formula::defined(Term::App(f, vars));
            let ctx = op.arity.context.clone();
            axioms.push(HornSequent::new(ctx.clone(), defined.clone(), op.arity.formula.clone()));
            axioms.push(HornSequent::new(ctx, op.arity.formula.clone(), defined));
        }
        axioms.extend(self.judgments.iter().cloned());
        let out = Theory::new(self.name.clone(), sig).with_axioms(axioms);
        let report = super::validate_theory(&out);
        if !report.is_ok() {
            return Err(Error::IllFormed(report.to_string()));
        }
        Ok(out)
    }
}

pub enum JudgmentKind<'a> {
    /// The premise may not mention any operation of the relative signature.
    SRelative(&'a RelativeTheory),
    /// The premise must be the translation of a source-signature formula.
    RhoRelative(&'a TheoryMorphism),
}

pub fn check_relative_judgment(kind: JudgmentKind<'_>, seq: &HornSequent) -> bool {
    match kind {
        JudgmentKind::SRelative(rt) => {
            let first_op = rt.base.sig().functions.len();
            seq.premise.functions().iter().all(|&f| f < first_op)
        }
        JudgmentKind::RhoRelative(rho) => premise_preimage(rho, &seq.context, &seq.premise).is_some(),
    }
}

/// A source formula-in-context whose translation along `rho` is exactly
/// `(ctx, phi)`, if one exists.
pub fn premise_preimage(rho: &TheoryMorphism, ctx: &[Variable], phi: &Formula) -> Option<FormulaInContext> {
    let candidates: Vec<Vec<SortId>> = ctx
        .iter()
        .map(|v| (0..rho.sort_map.len()).filter(|&s| rho.sort_map[s] == v.sort).collect())
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return None;
    }
    let mut choice = vec![0usize; ctx.len()];
    loop {
        let sorts: Vec<SortId> = choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        let pre = Preimage { rho, var_sorts: &sorts };
        if let Some(formula) = pre.formula(phi) {
            let context = ctx.iter().zip(&sorts).map(|(v, &s)| Variable::new(v.name.clone(), s)).collect();
            return Some(FormulaInContext { context, formula });
        }
        // odometer over the per-variable sort choices
        let mut i = 0;
        loop {
            if i == ctx.len() {
                return None;
            }
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

struct Preimage<'a> {
    rho: &'a TheoryMorphism,
    var_sorts: &'a [SortId],
}

impl Preimage<'_> {
    fn sig(&self) -> &Signature {
        self.rho.source.sig()
    }

    fn term(&self, t: &Term, want: SortId) -> Option<Term> {
        match t {
            Term::Var(i) => (self.var_sorts.get(*i) == Some(&want)).then_some(Term::Var(*i)),
            Term::App(g, args) => self.rho.func_map.iter().enumerate().filter(|&(_, h)| h == g).find_map(|(f, _)| {
                let sym = &self.sig().functions[f];
                if sym.result != want || sym.args.len() != args.len() {
                    return None;
                }
                let pre: Option<Vec<Term>> = args.iter().zip(&sym.args).map(|(a, &s)| self.term(a, s)).collect();
                pre.map(|p| Term::App(f, p))
            }),
        }
    }

    fn sorts_of(&self, t: &Term) -> Vec<SortId> {
        (0..self.sig().sorts.len()).filter(|&s| self.term(t, s).is_some()).collect()
    }

    fn formula(&self, phi: &Formula) -> Option<Formula> {
        match phi {
            Formula::Top => Some(Formula::Top),
            Formula::And(a, b) => Some(Formula::and(self.formula(a)?, self.formula(b)?)),
            Formula::Eq(a, b) => self
                .sorts_of(a)
                .into_iter()
                .find_map(|s| Some(Formula::Eq(self.term(a, s)?, self.term(b, s)?))),
            Formula::Rel(q, args) => self.rho.rel_map.iter().enumerate().filter(|&(_, p)| p == q).find_map(|(r, _)| {
                let sym = &self.sig().relations[r];
                if sym.args.len() != args.len() {
                    return None;
                }
                let pre: Option<Vec<Term>> = args.iter().zip(&sym.args).map(|(a, &s)| self.term(a, s)).collect();
                pre.map(|p| Formula::Rel(r, p))
            }),
        }
    }
}
