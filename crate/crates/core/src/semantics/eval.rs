use super::PartialStructure;
use crate::error::{Error, Result};
use crate::syntax::{Formula, HornSequent, Term, Theory, Variable};

/// Value of `t` under `env` (one element per context position), or `None`
/// when some subterm is undefined.
pub fn eval(m: &PartialStructure, t: &Term, env: &[usize]) -> Option<usize> {
    match t {
        Term::Var(i) => Some(env[*i]),
        Term::App(f, args) => {
            let sym = &m.sig.functions[*f];
            let mut index = 0;
            for (a, &s) in args.iter().zip(&sym.args) {
                index = index * m.size(s) + eval(m, a, env)?;
            }
            m.funcs[*f][index]
        }
    }
}

pub fn holds(m: &PartialStructure, phi: &Formula, env: &[usize]) -> bool {
    match phi {
        Formula::Top => true,
        Formula::And(a, b) => holds(m, a, env) && holds(m, b, env),
        Formula::Eq(a, b) => match (eval(m, a, env), eval(m, b, env)) {
            (Some(x), Some(y)) => x == y,
            _ => false,
        },
        Formula::Rel(r, args) => {
            let sym = &m.sig.relations[*r];
            let mut index = 0;
            for (a, &s) in args.iter().zip(&sym.args) {
                match eval(m, a, env) {
                    Some(v) => index = index * m.size(s) + v,
                    None => return false,
                }
            }
            m.rels[*r][index]
        }
    }
}

fn check_env(m: &PartialStructure, ctx: &[Variable], env: &[usize]) -> Result<()> {
    if env.len() != ctx.len() {
        return Err(Error::SignatureMismatch(format!(
            "assignment has {} entries for a context of length {}",
            env.len(),
            ctx.len()
        )));
    }
    for (v, &a) in ctx.iter().zip(env) {
        if v.sort >= m.carriers.len() || a >= m.size(v.sort) {
            return Err(Error::SignatureMismatch(format!(
                "`{}` is assigned an element outside its sort",
                v.name
            )));
        }
    }
    Ok(())
}

/// Checked form of [`eval`]: the assignment must fit the context.
pub fn eval_term(m: &PartialStructure, ctx: &[Variable], t: &Term, env: &[usize]) -> Result<Option<usize>> {
    check_env(m, ctx, env)?;
    t.sort(&m.sig, ctx).map_err(Error::IllFormed)?;
    Ok(eval(m, t, env))
}

/// Calls `visit` on every assignment of the context, in lexicographic order,
/// until it returns `false`.
pub fn for_each_assignment(m: &PartialStructure, ctx: &[Variable], mut visit: impl FnMut(&[usize]) -> bool) {
    let sizes: Vec<usize> = ctx.iter().map(|v| m.size(v.sort)).collect();
    if sizes.contains(&0) {
        return;
    }
    let mut env = vec![0usize; ctx.len()];
    loop {
        if !visit(&env) {
            return;
        }
        let mut i = env.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            env[i] += 1;
            if env[i] < sizes[i] {
                break;
            }
            env[i] = 0;
        }
    }
}

/// The interpretation `⟦x̄.φ⟧`: all satisfying assignments, lexicographically ordered.
pub fn eval_formula(m: &PartialStructure, ctx: &[Variable], phi: &Formula) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_assignment(m, ctx, |env| {
        if holds(m, phi, env) {
            out.push(env.to_vec());
        }
        true
    });
    out
}

/// First assignment satisfying the premise but not the conclusion.
pub fn sequent_counterexample(m: &PartialStructure, seq: &HornSequent) -> Option<Vec<usize>> {
    let mut found = None;
    for_each_assignment(m, &seq.context, |env| {
        if holds(m, &seq.premise, env) && !holds(m, &seq.conclusion, env) {
            found = Some(env.to_vec());
            return false;
        }
        true
    });
    found
}

pub fn sequent_valid(m: &PartialStructure, seq: &HornSequent) -> bool {
    sequent_counterexample(m, seq).is_none()
}

fn check_signature(m: &PartialStructure, t: &Theory) -> Result<()> {
    if *m.sig != *t.signature {
        return Err(Error::SignatureMismatch(format!(
            "structure over `{}` checked against theory `{}`",
            m.signature_name, t.name
        )));
    }
    Ok(())
}

/// Index of the first failing axiom and the offending assignment.
pub fn model_counterexample(m: &PartialStructure, t: &Theory) -> Result<Option<(usize, Vec<usize>)>> {
    check_signature(m, t)?;
    Ok(t.axioms.iter().enumerate().find_map(|(i, ax)| sequent_counterexample(m, ax).map(|env| (i, env))))
}

pub fn is_model(m: &PartialStructure, t: &Theory) -> Result<bool> {
    Ok(model_counterexample(m, t)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::theories;
    use crate::semantics::PartialStructure;

    fn chain2() -> PartialStructure {
        let pos = theories::pos();
        let mut m = PartialStructure::empty("pos", pos.signature.clone(), &[2]);
        for (a, b) in [(0, 0), (0, 1), (1, 1)] {
            m.set_rel(0, &[a, b], true);
        }
        m
    }

    #[test]
    fn top_is_the_whole_carrier() {
        let m = chain2();
        let ctx = vec![Variable::new("x", 0)];
        assert_eq!(eval_formula(&m, &ctx, &Formula::Top), vec![vec![0], vec![1]]);
    }

    #[test]
    fn order_of_the_two_chain() {
        let m = chain2();
        let ctx = vec![Variable::new("x", 0), Variable::new("y", 0)];
        let phi = Formula::Rel(0, vec![Term::Var(0), Term::Var(1)]);
        assert_eq!(eval_formula(&m, &ctx, &phi), vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn nested_application_is_undefined_when_inner_value_is() {
        let mut sig = crate::syntax::Signature::with_sorts(["s"]);
        let f = sig.add_function("f", vec![0], 0);
        let mut m = PartialStructure::empty("t", std::sync::Arc::new(sig), &[2]);
        m.set_func(f, &[0], Some(1));
        let ctx = vec![Variable::new("x", 0)];
        let ffx = Term::App(f, vec![Term::App(f, vec![Term::Var(0)])]);
        assert_eq!(eval_term(&m, &ctx, &ffx, &[0]).unwrap(), None);
        assert_eq!(eval_term(&m, &ctx, &Term::Var(0), &[1]).unwrap(), Some(1));
        assert!(eval_term(&m, &ctx, &Term::Var(0), &[2]).is_err());
    }

    #[test]
    fn two_cycle_is_not_a_poset() {
        let pos = theories::pos();
        let mut m = PartialStructure::empty("pos", pos.signature.clone(), &[2]);
        for a in 0..2 {
            for b in 0..2 {
                m.set_rel(0, &[a, b], true);
            }
        }
        assert!(!is_model(&m, &pos).unwrap());
        assert_eq!(model_counterexample(&m, &pos).unwrap().unwrap().0, 1);
        assert!(is_model(&chain2(), &pos).unwrap());
        let empty = PartialStructure::empty("pos", pos.signature.clone(), &[0]);
        assert!(is_model(&empty, &pos).unwrap());
    }
}
