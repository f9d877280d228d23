use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::homsearch::hom_exists;
use crate::semantics::ChainRecipe;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StabilizationReport {
    /// The stages from `N` up to the horizon are pairwise hom-connected.
    StabilizedAt(usize),
    /// No stage before the last is reachable back from the last;
    /// `witness` is a pair `(later, earlier)` of stage labels with no morphism
    /// `later → earlier`.
    NoStabilizationUpTo { horizon: usize, witness: (String, String) },
}

impl StabilizationReport {
    pub fn to_json(&self) -> Value {
        match self {
            StabilizationReport::StabilizedAt(n) => json!({ "verdict": "stabilized", "index": n }),
            StabilizationReport::NoStabilizationUpTo { horizon, witness } => json!({
                "verdict": "no-stabilization",
                "horizon": horizon,
                "witness": { "from": witness.0, "to": witness.1 },
            }),
        }
    }
}

/// Probes the chain on the stages `X_0, …, X_{horizon-1}`.
///
/// Forward maps come from the chain itself, so the tail from `N` is strongly
/// connected exactly when the last stage maps back to `X_N`. The least such
/// `N` below the last stage is reported; with one stage the chain is trivially
/// stable.
pub fn acc_probe(c: &ChainRecipe, horizon: usize) -> Result<StabilizationReport> {
    if horizon == 0 {
        return Err(Error::IllFormed("horizon must be positive".into()));
    }
    let stages: Vec<_> = (0..horizon).map(|n| c.stage(n)).collect();
    for n in 0..horizon - 1 {
        c.link(n)?;
    }
    if horizon == 1 {
        return Ok(StabilizationReport::StabilizedAt(0));
    }
    let last = horizon - 1;
    match (0..last).find(|&n| hom_exists(&stages[last], &stages[n])) {
        Some(n) => Ok(StabilizationReport::StabilizedAt(n)),
        None => Ok(StabilizationReport::NoStabilizationUpTo {
            horizon,
            witness: (c.label(last), c.label(last - 1)),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{chains, structures};

    #[test]
    fn constant_chain_is_stable() {
        let c = ChainRecipe::constant("c", structures::chain(2));
        assert_eq!(acc_probe(&c, 4).unwrap(), StabilizationReport::StabilizedAt(0));
    }

    #[test]
    fn nonempty_sets_stabilize_immediately() {
        assert_eq!(acc_probe(&chains::set_chain(), 6).unwrap(), StabilizationReport::StabilizedAt(0));
    }

    #[test]
    fn bounded_lattices_never_stabilize() {
        let r = acc_probe(&chains::m_chain(), 5).unwrap();
        assert_eq!(
            r,
            StabilizationReport::NoStabilizationUpTo { horizon: 5, witness: ("M_6".into(), "M_5".into()) }
        );
    }

    #[test]
    fn ordinal_chain_stabilizes_at_the_bottom() {
        assert_eq!(acc_probe(&chains::u_chain(2), 6).unwrap(), StabilizationReport::StabilizedAt(3));
    }
}
