use std::collections::BTreeSet;
use std::fmt;

use super::{Formula, HornSequent, Signature, Theory, Variable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Index of the offending axiom, `None` for signature-level problems.
    pub axiom: Option<usize>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.axiom {
            Some(i) => write!(f, "axiom {}: {}", i + 1, self.message),
            None => write!(f, "signature: {}", self.message),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WellFormedness {
    pub violations: Vec<Violation>,
}

impl WellFormedness {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for WellFormedness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("OK");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Reports every violation in the theory instead of stopping at the first.
pub fn validate_theory(theory: &Theory) -> WellFormedness {
    let sig = theory.sig();
    let mut violations: Vec<Violation> = sig
        .violations()
        .into_iter()
        .map(|message| Violation { axiom: None, message })
        .collect();
    for (i, ax) in theory.axioms.iter().enumerate() {
        violations.extend(
            sequent_violations(sig, ax)
                .into_iter()
                .map(|message| Violation { axiom: Some(i), message }),
        );
    }
    WellFormedness { violations }
}

pub(crate) fn sequent_violations(sig: &Signature, seq: &HornSequent) -> Vec<String> {
    let mut out = context_violations(sig, &seq.context);
    formula_violations(sig, &seq.context, &seq.premise, &mut out);
    formula_violations(sig, &seq.context, &seq.conclusion, &mut out);
    out
}

pub(crate) fn context_violations(sig: &Signature, ctx: &[Variable]) -> Vec<String> {
    let mut out = Vec::new();
    let mut names = BTreeSet::new();
    for v in ctx {
        if !names.insert(v.name.as_str()) {
            out.push(format!("context variables must be distinct (`{}` repeated)", v.name));
        }
        if v.sort >= sig.sorts.len() {
            out.push(format!("variable `{}` has undeclared sort #{}", v.name, v.sort));
        }
    }
    out
}

pub(crate) fn formula_violations(sig: &Signature, ctx: &[Variable], phi: &Formula, out: &mut Vec<String>) {
    match phi {
        Formula::Top => {}
        Formula::And(a, b) => {
            formula_violations(sig, ctx, a, out);
            formula_violations(sig, ctx, b, out);
        }
        Formula::Eq(a, b) if a == b => out.extend(a.sort(sig, ctx).err()),
        Formula::Eq(a, b) => match (a.sort(sig, ctx), b.sort(sig, ctx)) {
            (Ok(sa), Ok(sb)) if sa != sb => out.push(format!(
                "equation between terms of different sorts `{}` and `{}`",
                sig.sorts[sa], sig.sorts[sb]
            )),
            (Ok(_), Ok(_)) => {}
            (ea, eb) => out.extend(ea.err().into_iter().chain(eb.err())),
        },
        Formula::Rel(r, args) => {
            let Some(sym) = sig.relations.get(*r) else {
                out.push(format!("unknown relation symbol #{r}"));
                return;
            };
            if sym.args.len() != args.len() {
                out.push(format!(
                    "arity mismatch: `{}` expects {} arguments, got {}",
                    sym.name,
                    sym.args.len(),
                    args.len()
                ));
                return;
            }
            for (i, (t, &want)) in args.iter().zip(&sym.args).enumerate() {
                match t.sort(sig, ctx) {
                    Ok(got) if got != want => out.push(format!(
                        "arity mismatch: argument {} of `{}` has sort `{}`, expected `{}`",
                        i + 1,
                        sym.name,
                        sig.sorts[got],
                        sig.sorts[want]
                    )),
                    Ok(_) => {}
                    Err(e) => out.push(e),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_theory, Term};

    #[test]
    fn parsed_pos_is_well_formed() {
        let t = parse_theory(include_str!("../../corpus/pos.phl")).unwrap();
        assert!(validate_theory(&t).is_ok());
    }

    #[test]
    fn repeated_context_variable_is_reported() {
        let mut t = Theory::new("t", Signature::with_sorts(["s"]));
        t.axioms.push(HornSequent::new(
            vec![Variable::new("x", 0), Variable::new("x", 0)],
            Formula::Top,
            Formula::Top,
        ));
        let report = validate_theory(&t);
        assert_eq!(report.violations.len(), 1);
        assert!(report.violations[0].message.contains("context variables must be distinct"));
    }

    #[test]
    fn equation_across_sorts_is_reported() {
        let t = Theory::new("t", Signature::with_sorts(["a", "b"])).with_axioms(vec![HornSequent::new(
            vec![Variable::new("x", 0), Variable::new("y", 1)],
            Formula::Top,
            Formula::Eq(Term::Var(0), Term::Var(1)),
        )]);
        let report = validate_theory(&t);
        assert!(!report.is_ok());
        assert!(report.violations[0].message.contains("different sorts"));
    }

    #[test]
    fn unbound_variable_and_bad_arity_are_reported() {
        let mut sig = Signature::with_sorts(["s"]);
        let f = sig.add_function("f", vec![0], 0);
        let t = Theory::new("t", sig).with_axioms(vec![HornSequent::new(
            vec![Variable::new("x", 0)],
            Formula::defined(Term::Var(3)),
            Formula::defined(Term::app(f, vec![])),
        )]);
        let report = validate_theory(&t);
        assert_eq!(report.violations.len(), 2, "{report}");
    }
}
