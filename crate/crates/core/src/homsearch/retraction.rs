use serde_json::{json, Value};

use super::HomSearch;
use crate::error::{Error, Result};
use crate::semantics::{Homomorphism, PartialStructure, SortMaps};
use crate::syntax::{Theory, TheoryFlag};

/// Candidate images `g(x) ∈ p⁻¹(f(x))` for lifts of `f` along `p`.
fn fibre_domains(p: &Homomorphism, f: &[Vec<usize>]) -> Vec<Vec<Vec<usize>>> {
    let fibres: Vec<Vec<Vec<usize>>> = p
        .maps
        .iter()
        .zip(&p.target.carriers)
        .map(|(map, c)| {
            let mut fib = vec![Vec::new(); c.len()];
            map.iter().enumerate().for_each(|(a, &b)| fib[b].push(a));
            fib
        })
        .collect();
    f.iter().enumerate().map(|(s, fs)| fs.iter().map(|&y| fibres[s][y].clone()).collect()).collect()
}

/// A map `g : Γ → p.source` with `p ∘ g = f`, for `f : Γ → p.target`.
pub fn find_lift(p: &Homomorphism, probe: &PartialStructure, f: &[Vec<usize>]) -> Option<SortMaps> {
    HomSearch::new(probe, &p.source).with_domains(fibre_domains(p, f)).first()
}

/// A section `s` of `p`, i.e. `p ∘ s = id`.
pub fn find_section(p: &Homomorphism) -> Option<Homomorphism> {
    let id: Vec<Vec<usize>> = p.target.carriers.iter().map(|c| (0..c.len()).collect()).collect();
    let maps = find_lift(p, &p.target, &id)?;
    Some(Homomorphism::new_unchecked(p.target.clone(), p.source.clone(), maps))
}

#[derive(Clone, Copy, Debug)]
pub enum RetractionRule<'a> {
    /// Lift every map from every probe.
    Probes(&'a [PartialStructure]),
    /// Use the exact rule the theory's flags declare.
    Exact(&'a Theory),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalRetractionVerdict {
    /// Every map from every probe lifted. Finite probes only cover part of
    /// the finitely presentable objects, so this is a necessary condition.
    PassedUpToProbes { probes: usize, maps_checked: usize },
    /// The map `map : probes[probe] → target` has no lift.
    FailedWithWitness { probe: usize, map: SortMaps },
    ExactTrue,
    ExactFalse { reason: String },
}

impl LocalRetractionVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, LocalRetractionVerdict::PassedUpToProbes { .. } | LocalRetractionVerdict::ExactTrue)
    }

    pub fn to_json(&self) -> Value {
        match self {
            Self::PassedUpToProbes { probes, maps_checked } => {
                json!({ "verdict": "passed-up-to-probes", "probes": probes, "maps_checked": maps_checked })
            }
            Self::FailedWithWitness { probe, map } => json!({ "verdict": "failed", "probe": probe, "map": map }),
            Self::ExactTrue => json!({ "verdict": "exact-true" }),
            Self::ExactFalse { reason } => json!({ "verdict": "exact-false", "reason": reason }),
        }
    }
}

fn first_gap(p: &Homomorphism) -> Option<String> {
    p.maps.iter().zip(&p.target.carriers).enumerate().find_map(|(s, (map, c))| {
        let mut hit = vec![false; c.len()];
        map.iter().for_each(|&b| hit[b] = true);
        let y = hit.iter().position(|h| !h)?;
        Some(format!("`{}` of sort `{}` has no preimage", c[y], p.target.sig.sorts[s]))
    })
}

pub fn local_retraction_check(p: &Homomorphism, rule: RetractionRule<'_>) -> Result<LocalRetractionVerdict> {
    match rule {
        RetractionRule::Exact(t) => {
            let surjective = t.has_flag(TheoryFlag::ExactSurjective);
            let constants = t.has_flag(TheoryFlag::ExactConstants);
            if !surjective && !constants {
                return Err(Error::MissingFlag { theory: t.name.clone(), flag: "exact_surjective or exact_constants".into() });
            }
            if let Some(reason) = first_gap(p) {
                return Ok(LocalRetractionVerdict::ExactFalse { reason: format!("not surjective: {reason}") });
            }
            if constants {
                let src = &p.source;
                let consts: Vec<(usize, usize)> = src
                    .sig
                    .functions
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| f.args.is_empty())
                    .filter_map(|(f, sym)| src.func(f, &[]).map(|v| (f, p.maps[sym.result][v])))
                    .collect();
                for (i, &(f, img)) in consts.iter().enumerate() {
                    for &(g, img2) in &consts[i + 1..] {
                        let same_sort = src.sig.functions[f].result == src.sig.functions[g].result;
                        if same_sort && img == img2 && src.func(f, &[]) != src.func(g, &[]) {
                            let (a, b) = (&src.sig.functions[f].name, &src.sig.functions[g].name);
                            return Ok(LocalRetractionVerdict::ExactFalse { reason: format!("merges `{a}` and `{b}`") });
                        }
                    }
                }
            }
            Ok(LocalRetractionVerdict::ExactTrue)
        }
        RetractionRule::Probes(probes) => {
            if let Some(g) = probes.iter().find(|g| g.sig != p.target.sig) {
                return Err(Error::SignatureMismatch(format!("probe over `{}`", g.signature_name)));
            }
            // Probes are tried in order and the first failure ends the check,
            // so small probes should come first.
            let mut maps_checked = 0;
            for (probe, g) in probes.iter().enumerate() {
                let mut witness = None;
                HomSearch::new(g, &p.target).for_each(|f| {
                    maps_checked += 1;
                    if find_lift(p, g, &f).is_none() {
                        witness = Some(f);
                        return false;
                    }
                    true
                });
                if let Some(map) = witness {
                    return Ok(LocalRetractionVerdict::FailedWithWitness { probe, map });
                }
            }
            Ok(LocalRetractionVerdict::PassedUpToProbes { probes: probes.len(), maps_checked })
        }
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::corpus::{structures, theories};

    fn set_map(from: usize, to: usize, map: Vec<usize>) -> Homomorphism {
        let set = theories::set();
        let (a, b) = (structures::bare_set(&set, from), structures::bare_set(&set, to));
        Homomorphism::new(Arc::new(a), Arc::new(b), vec![map]).unwrap()
    }

    #[test]
    fn collapsing_a_set_is_a_local_retraction() {
        let p = set_map(2, 1, vec![0, 0]);
        let set = theories::set();
        let probes: Vec<_> = (0..=2).map(|n| structures::bare_set(&set, n)).collect();
        assert!(matches!(
            local_retraction_check(&p, RetractionRule::Probes(&probes)).unwrap(),
            LocalRetractionVerdict::PassedUpToProbes { probes: 3, .. }
        ));
        assert_eq!(local_retraction_check(&p, RetractionRule::Exact(&set)).unwrap(), LocalRetractionVerdict::ExactTrue);
        assert!(find_section(&p).is_some());
    }

    #[test]
    fn inclusion_fails_on_the_missed_point() {
        let p = set_map(1, 2, vec![0]);
        let probes = [structures::bare_set(&theories::set(), 1)];
        assert_eq!(
            local_retraction_check(&p, RetractionRule::Probes(&probes)).unwrap(),
            LocalRetractionVerdict::FailedWithWitness { probe: 0, map: vec![vec![1]] }
        );
    }

    #[test]
    fn merging_constants_is_exact_false() {
        let t = theories::n_const(2);
        let a = structures::constants_model(&t, &[0, 1], 2);
        let b = structures::constants_model(&t, &[0, 0], 1);
        let p = Homomorphism::new(Arc::new(a), Arc::new(b), vec![vec![0, 0]]).unwrap();
        assert!(p.is_surjective());
        assert!(matches!(local_retraction_check(&p, RetractionRule::Exact(&t)).unwrap(), LocalRetractionVerdict::ExactFalse { .. }));
    }

    #[test]
    fn exact_rule_needs_a_flag() {
        let c2 = Arc::new(structures::chain(2));
        let id = Homomorphism::identity(c2);
        assert!(matches!(
            local_retraction_check(&id, RetractionRule::Exact(&theories::pos())),
            Err(Error::MissingFlag { .. })
        ));
    }

    #[test]
    fn remark_link_has_no_section() {
        let a0 = Arc::new(structures::remark_stage(2, 0));
        let a1 = Arc::new(structures::remark_stage(2, 1));
        let p = Homomorphism::new(a0, a1, vec![vec![0, 1]]).unwrap();
        assert!(find_section(&p).is_none());
    }
}
