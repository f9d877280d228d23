//! Corpus ω-chains.

use super::structures;
use crate::semantics::ChainRecipe;

fn inclusion(sizes: Vec<usize>) -> Vec<Vec<usize>> {
    sizes.into_iter().map(|n| (0..n).collect()).collect()
}

/// Bare sets `1 → 2 → 3 → ⋯` along inclusions.
pub fn set_chain() -> ChainRecipe {
    let t = super::theories::set();
    ChainRecipe::new("set-chain", move |n| structures::bare_set(&t, n + 1), |n| vec![(0..n + 1).collect()])
    .with_labels(|n| format!("Set_{}", n + 1))
}

/// Chains `1 → 2 → 3 → ⋯` as posets along inclusions; carriers never
/// stabilize.
pub fn growing_chains() -> ChainRecipe {
    ChainRecipe::new("growing-chains", |n| structures::chain(n + 1), |n| vec![(0..n + 1).collect()])
        .with_labels(|n| format!("chain_{}", n + 1))
}

/// Bounded lattices `M_2 → M_3 → ⋯`, atoms included in order.
pub fn m_chain() -> ChainRecipe {
    ChainRecipe::new("m-lattices", |n| structures::diamond(n + 2), |n| {
        let size = n + 4;
        let mut map: Vec<usize> = (0..size - 1).collect();
        map.push(size);
        vec![map]
    })
    .with_labels(|n| format!("M_{}", n + 2))
}

/// Prime-cycle coproducts `A_1 → A_2 → ⋯` in `end` along coprojections.
pub fn a_chain() -> ChainRecipe {
    ChainRecipe::new("a-primes", |n| structures::prime_cycles(n + 1), |n| {
        vec![(0..structures::prime_cycles(n + 1).total_size()).collect()]
    })
    .with_labels(|n| format!("A_{}", n + 1))
}

/// Truncated presheaves `L_0 → L_1 → ⋯` on the chain with `k + 1` objects,
/// constant from `L_{k+1}` on.
pub fn l_chain(k: usize) -> ChainRecipe {
    let stage = move |n: usize| structures::l_presheaf(k, n.min(k + 1));
    ChainRecipe::new(format!("presheaf-l({k})"), stage, move |n| inclusion(stage(n).sizes()))
        .with_labels(move |n| format!("L_{}", n.min(k + 1)))
        .with_fact_stabilization(k + 1)
}

/// `U_{k+1} → U_k → ⋯ → U_0 → U_0 → ⋯` on `presheaf_omega(k)`; stabilizes at
/// stage `k + 1`.
pub fn u_chain(k: usize) -> ChainRecipe {
    let alpha = move |n: usize| (k + 1).saturating_sub(n);
    let stage = move |n: usize| structures::u_functor(k, alpha(n));
    ChainRecipe::new(format!("ordinal-u({k})"), stage, move |n| inclusion(stage(n).sizes()))
        .with_labels(move |n| format!("U_{}", alpha(n)))
}

/// `A_0 → A_1 → ⋯` over `remark_locret(k)`: identity carriers, `u_i` gains
/// `u_i(a) = 0` at stage `i + 1`. No new facts appear after stage `k + 1`.
pub fn remark_locret(k: usize) -> ChainRecipe {
    ChainRecipe::new(format!("remark-locret({k})"), move |n| structures::remark_stage(k, n), |_| vec![vec![0, 1]])
        .with_labels(|n| format!("A_{n}"))
        .with_fact_stabilization(k + 1)
}

/// Names accepted by [`by_name`], with default truncation parameters.
pub const NAMES: &[&str] =
    &["a-primes", "growing-chains", "m-lattices", "ordinal-u", "presheaf-l", "remark-locret", "set-chain"];

/// Resolves a chain by name. Parameterized chains take an optional
/// `(k)` suffix, e.g. `presheaf-l(4)`; the defaults are 4, 2 and 2 for
/// `presheaf-l`, `ordinal-u` and `remark-locret`.
pub fn by_name(name: &str) -> Option<ChainRecipe> {
    let norm = name.trim().replace('_', "-");
    let (head, k) = match norm.split_once('(') {
        Some((h, rest)) => (h.to_string(), Some(rest.strip_suffix(')')?.trim().parse::<usize>().ok()?)),
        None => (norm, None),
    };
    Some(match head.as_str() {
        "set-chain" => set_chain(),
        "growing-chains" => growing_chains(),
        "m-lattices" => m_chain(),
        "a-primes" => a_chain(),
        "presheaf-l" => l_chain(k.unwrap_or(4)),
        "ordinal-u" => u_chain(k.unwrap_or(2)),
        "remark-locret" => remark_locret(k.unwrap_or(2)),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn links_are_homomorphisms() {
        for name in NAMES {
            let c = by_name(name).unwrap();
            for n in 0..5 {
                c.link(n).unwrap_or_else(|e| panic!("{name}: {e}"));
            }
        }
    }

    #[test]
    fn labels_follow_stage_indexing() {
        assert_eq!(m_chain().label(0), "M_2");
        assert_eq!(a_chain().label(2), "A_3");
        assert_eq!(u_chain(2).label(0), "U_3");
        assert_eq!(l_chain(4).label(9), "L_5");
    }
}
