//! Named corpus structures.

use std::sync::Arc;

use super::theories;
use crate::semantics::PartialStructure;
use crate::syntax::Theory;

fn set_rel2(m: &mut PartialStructure, r: &str, a: usize, b: usize) {
    let r = m.sig.relation_id(r).expect("relation exists");
    m.set_rel(r, &[a, b], true);
}

/// The `n`-element chain `0 ≤ 1 ≤ ⋯` as a poset.
pub fn chain(n: usize) -> PartialStructure {
    let t = theories::pos();
    let mut m = PartialStructure::empty(&t.name, t.signature.clone(), &[n]);
    for i in 0..n {
        for j in i..n {
            set_rel2(&mut m, "leq", i, j);
        }
    }
    m
}

/// The discrete `n`-element poset.
pub fn antichain(n: usize) -> PartialStructure {
    let t = theories::pos();
    let mut m = PartialStructure::empty(&t.name, t.signature.clone(), &[n]);
    for i in 0..n {
        set_rel2(&mut m, "leq", i, i);
    }
    m
}

/// The poset on the given elements with the reflexive closure of `pairs`
/// (assumed transitive already).
pub fn poset(labels: &[&str], pairs: &[(usize, usize)]) -> PartialStructure {
    let t = theories::pos();
    let carriers = vec![labels.iter().map(|s| s.to_string()).collect()];
    let mut m = PartialStructure::with_carriers(&t.name, t.signature.clone(), carriers);
    for i in 0..labels.len() {
        set_rel2(&mut m, "leq", i, i);
    }
    for &(a, b) in pairs {
        set_rel2(&mut m, "leq", a, b);
    }
    m
}

/// The bounded lattice `M_n`: a bottom `0`, a top `1` and `n` pairwise
/// incomparable atoms `a_0, …, a_{n-1}` in between.
pub fn diamond(n: usize) -> PartialStructure {
    let t = theories::bounded_lattice();
    let mut labels = vec!["0".to_string()];
    labels.extend((0..n).map(|i| format!("a_{i}")));
    labels.push("1".to_string());
    let size = n + 2;
    let (bot, top) = (0, size - 1);
    let leq = |x: usize, y: usize| x == y || x == bot || y == top;
    let join = |x: usize, y: usize| match () {
        _ if leq(x, y) => y,
        _ if leq(y, x) => x,
        _ => top,
    };
    let meet = |x: usize, y: usize| match () {
        _ if leq(x, y) => x,
        _ if leq(y, x) => y,
        _ => bot,
    };
    let sig = &t.signature;
    let mut m = PartialStructure::with_carriers(&t.name, sig.clone(), vec![labels]);
    let (j, mt) = (sig.function_id("join").unwrap(), sig.function_id("meet").unwrap());
    for x in 0..size {
        for y in 0..size {
            m.set_func(j, &[x, y], Some(join(x, y)));
            m.set_func(mt, &[x, y], Some(meet(x, y)));
        }
    }
    m.set_func(sig.function_id("zero").unwrap(), &[], Some(bot));
    m.set_func(sig.function_id("one").unwrap(), &[], Some(top));
    m
}

/// The cycle `C_n` in `end`: `f(i) = i + 1 mod n`.
pub fn cycle(n: usize) -> PartialStructure {
    let t = theories::end();
    let mut m = PartialStructure::empty(&t.name, t.signature.clone(), &[n]);
    for i in 0..n {
        m.set_func(0, &[i], Some((i + 1) % n));
    }
    m
}

/// The first `n` primes.
pub fn primes(n: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(n);
    let mut c = 2;
    while out.len() < n {
        if out.iter().all(|p| c % p != 0) {
            out.push(c);
        }
        c += 1;
    }
    out
}

/// `A_n = C_2 ⊔ C_3 ⊔ ⋯ ⊔ C_{p_n}` in `end`, with labels `p.i`.
pub fn prime_cycles(n: usize) -> PartialStructure {
    let t = theories::end();
    let ps = primes(n);
    let labels: Vec<String> = ps.iter().flat_map(|p| (0..*p).map(move |i| format!("{p}.{i}"))).collect();
    let mut m = PartialStructure::with_carriers(&t.name, t.signature.clone(), vec![labels]);
    let mut base = 0;
    for p in ps {
        for i in 0..p {
            m.set_func(0, &[base + i], Some(base + (i + 1) % p));
        }
        base += p;
    }
    m
}

/// A structure over `theory`'s signature with `n` elements in every sort
/// and no facts.
pub fn bare_set(theory: &Theory, n: usize) -> PartialStructure {
    let sizes = vec![n; theory.sig().sorts.len()];
    PartialStructure::empty(&theory.name, theory.signature.clone(), &sizes)
}

/// Stage `A_n` of the local-retraction chain over `remark_locret(k)`:
/// carrier `{0, a}`, `e = 0`, every `u_i` fixes `0`, and `u_i(a) = 0`
/// exactly when `i < n`.
pub fn remark_stage(k: usize, n: usize) -> PartialStructure {
    remark_stage_in(&theories::remark_locret(k), k, n)
}

fn remark_stage_in(t: &Arc<Theory>, k: usize, n: usize) -> PartialStructure {
    let sig = &t.signature;
    let mut m = PartialStructure::with_carriers(&t.name, sig.clone(), vec![vec!["0".into(), "a".into()]]);
    m.set_func(sig.function_id("e").unwrap(), &[], Some(0));
    for i in 0..=k {
        let u = sig.function_id(&format!("u_{i}")).unwrap();
        m.set_func(u, &[0], Some(0));
        if i < n {
            m.set_func(u, &[1], Some(0));
        }
    }
    m
}

/// The `n`-constant model on `{0, …, size-1}` with `c_i = values[i]`.
pub fn constants_model(theory: &Theory, values: &[usize], size: usize) -> PartialStructure {
    let mut m = PartialStructure::empty(&theory.name, theory.signature.clone(), &[size]);
    for (i, &v) in values.iter().enumerate() {
        m.set_func(i, &[], Some(v));
    }
    m
}

/// The presheaf `L_i` on `presheaf_omega_op(k)`: one element at `s_j` for
/// `j < i`, empty above.
pub fn l_presheaf(k: usize, i: usize) -> PartialStructure {
    let t = theories::presheaf_omega_op(k);
    let sizes: Vec<usize> = (0..=k).map(|j| usize::from(j < i)).collect();
    let mut m = PartialStructure::empty(&t.name, t.signature.clone(), &sizes);
    for j in 0..k {
        if j + 1 < i {
            m.set_func(j, &[0], Some(0));
        }
    }
    m
}

/// The functor `U_α` on `presheaf_omega(k)`: one element at `s_j` for
/// `j ≥ α`, empty below (`α = k + 1` is empty everywhere).
pub fn u_functor(k: usize, alpha: usize) -> PartialStructure {
    let t = theories::presheaf_omega(k);
    let sizes: Vec<usize> = (0..=k).map(|j| usize::from(j >= alpha)).collect();
    let mut m = PartialStructure::empty(&t.name, t.signature.clone(), &sizes);
    for j in 0..k {
        if j >= alpha {
            m.set_func(j, &[0], Some(0));
        }
    }
    m
}
