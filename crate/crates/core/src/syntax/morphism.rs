use std::sync::Arc;

use super::{FormulaInContext, Formula, FuncId, HornSequent, RelId, SortId, Term, Theory, Variable};
use crate::error::{Error, Result};

/// A strict theory morphism: a symbol-by-symbol renaming of the source
/// signature into the target signature that respects arities.
///
/// Theoremhood of the translated axioms is not part of the value; see
/// [`crate::closure::check_theory_morphism_bounded`] for the semantic check.
#[derive(Clone, Debug, PartialEq)]
pub struct TheoryMorphism {
    pub name: String,
    pub source: Arc<Theory>,
    pub target: Arc<Theory>,
    pub sort_map: Vec<SortId>,
    pub func_map: Vec<FuncId>,
    pub rel_map: Vec<RelId>,
}

impl TheoryMorphism {
    pub fn new(
        name: impl Into<String>,
        source: Arc<Theory>,
        target: Arc<Theory>,
        sort_map: Vec<SortId>,
        func_map: Vec<FuncId>,
        rel_map: Vec<RelId>,
    ) -> Result<Self> {
        let (ss, ts) = (source.sig(), target.sig());
        let mismatch = |m: String| Err(Error::SignatureMismatch(m));
        if sort_map.len() != ss.sorts.len() || func_map.len() != ss.functions.len() || rel_map.len() != ss.relations.len()
        {
            return mismatch("symbol maps must cover the whole source signature".into());
        }
        if let Some(&s) = sort_map.iter().find(|&&s| s >= ts.sorts.len()) {
            return mismatch(format!("sort #{s} is not declared in `{}`", target.name));
        }
        for (f, &g) in func_map.iter().enumerate() {
            let from = &ss.functions[f];
            let Some(to) = ts.functions.get(g) else {
                return mismatch(format!("function #{g} is not declared in `{}`", target.name));
            };
            let args: Vec<_> = from.args.iter().map(|&s| sort_map[s]).collect();
            if args != to.args || sort_map[from.result] != to.result {
                return mismatch(format!("`{}` and `{}` have incompatible arities", from.name, to.name));
            }
        }
        for (r, &q) in rel_map.iter().enumerate() {
            let from = &ss.relations[r];
            let Some(to) = ts.relations.get(q) else {
                return mismatch(format!("relation #{q} is not declared in `{}`", target.name));
            };
            let args: Vec<_> = from.args.iter().map(|&s| sort_map[s]).collect();
            if args != to.args {
                return mismatch(format!("`{}` and `{}` have incompatible arities", from.name, to.name));
            }
        }
        Ok(TheoryMorphism { name: name.into(), source, target, sort_map, func_map, rel_map })
    }

    pub fn identity(theory: Arc<Theory>) -> Self {
        let sig = theory.sig();
        TheoryMorphism {
            name: format!("id_{}", theory.name),
            sort_map: (0..sig.sorts.len()).collect(),
            func_map: (0..sig.functions.len()).collect(),
            rel_map: (0..sig.relations.len()).collect(),
            source: theory.clone(),
            target: theory,
        }
    }

    pub fn translate<T: Translate>(&self, item: &T) -> Result<T> {
        item.translate(self)
    }

    fn sort(&self, s: SortId) -> Result<SortId> {
        self.sort_map.get(s).copied().ok_or_else(|| Error::OutsideDomain(format!("sort #{s}")))
    }

    fn func(&self, f: FuncId) -> Result<FuncId> {
        self.func_map.get(f).copied().ok_or_else(|| Error::OutsideDomain(format!("function #{f}")))
    }

    fn rel(&self, r: RelId) -> Result<RelId> {
        self.rel_map.get(r).copied().ok_or_else(|| Error::OutsideDomain(format!("relation #{r}")))
    }
}

/// Syntax that can be carried along a [`TheoryMorphism`].
pub trait Translate: Sized {
    fn translate(&self, rho: &TheoryMorphism) -> Result<Self>;
}

/// Replaces every sort and symbol of `item` by its image under `rho`.
pub fn translate_along<T: Translate>(rho: &TheoryMorphism, item: &T) -> Result<T> {
    item.translate(rho)
}

impl Translate for Term {
    fn translate(&self, rho: &TheoryMorphism) -> Result<Self> {
        match self {
            Term::Var(i) => Ok(Term::Var(*i)),
            Term::App(f, args) => Ok(Term::App(
                rho.func(*f)?,
                args.iter().map(|a| a.translate(rho)).collect::<Result<_>>()?,
            )),
        }
    }
}

impl Translate for Formula {
    fn translate(&self, rho: &TheoryMorphism) -> Result<Self> {
        Ok(match self {
            Formula::Top => Formula::Top,
            Formula::Rel(r, args) => {
                Formula::Rel(rho.rel(*r)?, args.iter().map(|a| a.translate(rho)).collect::<Result<_>>()?)
            }
            Formula::Eq(a, b) => Formula::Eq(a.translate(rho)?, b.translate(rho)?),
            Formula::And(a, b) => Formula::and(a.translate(rho)?, b.translate(rho)?),
        })
    }
}

impl Translate for Variable {
    fn translate(&self, rho: &TheoryMorphism) -> Result<Self> {
        Ok(Variable { name: self.name.clone(), sort: rho.sort(self.sort)? })
    }
}

impl Translate for Vec<Variable> {
    fn translate(&self, rho: &TheoryMorphism) -> Result<Self> {
        self.iter().map(|v| v.translate(rho)).collect()
    }
}

impl Translate for HornSequent {
    fn translate(&self, rho: &TheoryMorphism) -> Result<Self> {
        Ok(HornSequent {
            context: self.context.translate(rho)?,
            premise: self.premise.translate(rho)?,
            conclusion: self.conclusion.translate(rho)?,
        })
    }
}

impl Translate for FormulaInContext {
    fn translate(&self, rho: &TheoryMorphism) -> Result<Self> {
        Ok(FormulaInContext { context: self.context.translate(rho)?, formula: self.formula.translate(rho)? })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_document, parse_theory, validate::sequent_violations, Signature};

    const POS: &str = include_str!("../../corpus/pos.phl");

    fn pos() -> Arc<Theory> {
        Arc::new(parse_theory(POS).unwrap())
    }

    #[test]
    fn identity_translation_is_the_identity() {
        let p = pos();
        let id = TheoryMorphism::identity(p.clone());
        for ax in &p.axioms {
            assert_eq!(&translate_along(&id, ax).unwrap(), ax);
        }
    }

    #[test]
    fn renaming_into_an_ordered_semiring_keeps_shape() {
        let src = format!(
            "{POS}
theory osr {{
  sorts a;
  functions plus : a * a -> a, zero : -> a;
  relations le : a * a;
}}
morphism rho : pos -> osr {{ sorts * -> a; relations leq -> le; }}"
        );
        let doc = parse_document(&src).unwrap();
        let rho = doc.morphism("rho").unwrap();
        let ctx = vec![Variable::new("x", 0), Variable::new("y", 0)];
        let phi = Formula::Rel(0, vec![Term::Var(0), Term::Var(1)]);
        let le = rho.target.sig().relation_id("le").unwrap();
        assert_eq!(rho.translate(&phi).unwrap(), Formula::Rel(le, vec![Term::Var(0), Term::Var(1)]));
        let ctx2 = rho.translate(&ctx).unwrap();
        assert_eq!(ctx2[0], Variable::new("x", rho.target.sig().sort_id("a").unwrap()));
        for ax in &rho.source.axioms {
            let t = rho.translate(ax).unwrap();
            assert!(sequent_violations(rho.target.sig(), &t).is_empty());
        }
    }

    #[test]
    fn out_of_domain_symbols_are_rejected() {
        let id = TheoryMorphism::identity(pos());
        let bad = Formula::Rel(7, vec![]);
        assert!(matches!(id.translate(&bad), Err(Error::OutsideDomain(_))));
    }

    #[test]
    fn arity_incompatible_maps_are_rejected() {
        let mut sig = Signature::with_sorts(["a", "b"]);
        sig.add_relation("r", vec![0, 1]);
        let t = Arc::new(Theory::new("t", sig));
        let r = TheoryMorphism::new("m", pos(), t, vec![0], vec![], vec![0]);
        assert!(matches!(r, Err(Error::SignatureMismatch(_))));
    }
}
