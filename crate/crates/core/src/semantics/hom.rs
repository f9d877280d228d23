use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use super::PartialStructure;
use crate::error::{Error, Result};

/// Why a family of maps fails to be a homomorphism or a closed mono.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomViolation {
    /// Maps have the wrong shape (sort count, length, or out-of-range values).
    Shape(String),
    /// The function entry at `args` is not preserved (or, for closed monos,
    /// not reflected).
    Function { symbol: String, args: Vec<String> },
    Relation { symbol: String, args: Vec<String> },
}

impl fmt::Display for HomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomViolation::Shape(m) => f.write_str(m),
            HomViolation::Function { symbol, args } => write!(f, "function `{symbol}` at ({})", args.join(", ")),
            HomViolation::Relation { symbol, args } => write!(f, "relation `{symbol}` at ({})", args.join(", ")),
        }
    }
}

fn labels(m: &PartialStructure, args: &[usize], tuple: &[usize]) -> Vec<String> {
    tuple.iter().zip(args).map(|(&a, &s)| m.carriers[s][a].clone()).collect()
}

/// Checks both homomorphism conditions: defined entries are preserved with
/// matching values, and relation tuples are preserved.
pub fn check_homomorphism(maps: &[Vec<usize>], m: &PartialStructure, n: &PartialStructure) -> std::result::Result<(), HomViolation> {
    if *m.sig != *n.sig {
        return Err(HomViolation::Shape("structures have different signatures".into()));
    }
    if maps.len() != m.carriers.len() {
        return Err(HomViolation::Shape(format!("expected {} sort maps, got {}", m.carriers.len(), maps.len())));
    }
    for (s, map) in maps.iter().enumerate() {
        if map.len() != m.size(s) || map.iter().any(|&b| b >= n.size(s)) {
            return Err(HomViolation::Shape(format!("map on sort `{}` is not a total map into the target", m.sig.sorts[s])));
        }
    }
    let image = |args: &[usize], tuple: &[usize]| -> Vec<usize> { tuple.iter().zip(args).map(|(&a, &s)| maps[s][a]).collect() };
    for (f, sym) in m.sig.functions.iter().enumerate() {
        for (tuple, v) in m.func_entries(f) {
            if n.func(f, &image(&sym.args, &tuple)) != Some(maps[sym.result][v]) {
                return Err(HomViolation::Function { symbol: sym.name.clone(), args: labels(m, &sym.args, &tuple) });
            }
        }
    }
    for (r, sym) in m.sig.relations.iter().enumerate() {
        for tuple in m.rel_tuples(r) {
            if !n.rel(r, &image(&sym.args, &tuple)) {
                return Err(HomViolation::Relation { symbol: sym.name.clone(), args: labels(m, &sym.args, &tuple) });
            }
        }
    }
    Ok(())
}

pub fn is_homomorphism(maps: &[Vec<usize>], m: &PartialStructure, n: &PartialStructure) -> bool {
    check_homomorphism(maps, m, n).is_ok()
}

/// A verified homomorphism between two shared structures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    pub source: Arc<PartialStructure>,
    pub target: Arc<PartialStructure>,
    pub maps: Vec<Vec<usize>>,
}

impl Homomorphism {
    pub fn new(source: Arc<PartialStructure>, target: Arc<PartialStructure>, maps: Vec<Vec<usize>>) -> Result<Self> {
        check_homomorphism(&maps, &source, &target).map_err(|v| Error::NotHomomorphism(v.to_string()))?;
        Ok(Homomorphism { source, target, maps })
    }

    /// Skips verification; callers guarantee the homomorphism conditions.
    pub(crate) fn new_unchecked(source: Arc<PartialStructure>, target: Arc<PartialStructure>, maps: Vec<Vec<usize>>) -> Self {
        debug_assert!(is_homomorphism(&maps, &source, &target));
        Homomorphism { source, target, maps }
    }

    pub fn identity(m: Arc<PartialStructure>) -> Self {
        let maps = m.carriers.iter().map(|c| (0..c.len()).collect()).collect();
        Homomorphism { source: m.clone(), target: m, maps }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Homomorphism) -> Result<Homomorphism> {
        if *self.target != *other.source {
            return Err(Error::SignatureMismatch("composable maps must share the middle structure".into()));
        }
        let maps = self.maps.iter().zip(&other.maps).map(|(f, g)| f.iter().map(|&a| g[a]).collect()).collect();
        Ok(Homomorphism::new_unchecked(self.source.clone(), other.target.clone(), maps))
    }

    pub fn is_injective(&self) -> bool {
        self.maps.iter().zip(&self.target.carriers).all(|(map, c)| {
            let mut seen = vec![false; c.len()];
            map.iter().all(|&b| !std::mem::replace(&mut seen[b], true))
        })
    }

    pub fn is_surjective(&self) -> bool {
        self.maps.iter().zip(&self.target.carriers).all(|(map, c)| {
            let mut hit = vec![false; c.len()];
            map.iter().for_each(|&b| hit[b] = true);
            hit.into_iter().all(|x| x)
        })
    }

    pub fn to_json(&self) -> Value {
        let (m, n) = (&self.source, &self.target);
        let maps: serde_json::Map<String, Value> = m
            .sig
            .sorts
            .iter()
            .enumerate()
            .map(|(s, name)| {
                let pairs: serde_json::Map<String, Value> = self.maps[s]
                    .iter()
                    .enumerate()
                    .map(|(a, &b)| (m.carriers[s][a].clone(), json!(n.carriers[s][b])))
                    .collect();
                (name.clone(), Value::Object(pairs))
            })
            .collect();
        Value::Object(maps)
    }
}

/// For an injective homomorphism: the first image tuple at which the target
/// has a function entry or relation tuple that the source lacks.
pub fn closed_mono_violation(h: &Homomorphism) -> Result<Option<HomViolation>> {
    if !h.is_injective() {
        let s = h.maps.iter().zip(&h.target.carriers).position(|(map, c)| {
            let mut seen = vec![false; c.len()];
            !map.iter().all(|&b| !std::mem::replace(&mut seen[b], true))
        });
        return Err(Error::NotInjective(s.map(|s| h.source.sig.sorts[s].clone()).unwrap_or_default()));
    }
    let (m, n) = (&*h.source, &*h.target);
    for (f, sym) in m.sig.functions.iter().enumerate() {
        for i in 0..m.funcs[f].len() {
            let tuple = m.decode_tuple(&sym.args, i);
            if m.funcs[f][i].is_none() {
                let image: Vec<usize> = tuple.iter().zip(&sym.args).map(|(&a, &s)| h.maps[s][a]).collect();
                if n.func(f, &image).is_some() {
                    return Ok(Some(HomViolation::Function { symbol: sym.name.clone(), args: labels(m, &sym.args, &tuple) }));
                }
            }
        }
    }
    for (r, sym) in m.sig.relations.iter().enumerate() {
        for i in 0..m.rels[r].len() {
            if !m.rels[r][i] {
                let tuple = m.decode_tuple(&sym.args, i);
                let image: Vec<usize> = tuple.iter().zip(&sym.args).map(|(&a, &s)| h.maps[s][a]).collect();
                if n.rel(r, &image) {
                    return Ok(Some(HomViolation::Relation { symbol: sym.name.clone(), args: labels(m, &sym.args, &tuple) }));
                }
            }
        }
    }
    Ok(None)
}

pub fn is_closed_mono(h: &Homomorphism) -> Result<bool> {
    Ok(closed_mono_violation(h)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{structures, theories};

    #[test]
    fn identity_and_constant_maps() {
        let c2 = Arc::new(structures::chain(2));
        assert!(is_homomorphism(&Homomorphism::identity(c2.clone()).maps, &c2, &c2));
        let one = structures::chain(1);
        assert!(is_homomorphism(&[vec![0, 0]], &c2, &one));
        assert!(!is_homomorphism(&[vec![1, 0]], &c2, &c2));
    }

    #[test]
    fn remark_stage_map_reports_the_blocking_entry() {
        let a1 = structures::remark_stage(2, 1);
        let a0 = structures::remark_stage(2, 0);
        let err = check_homomorphism(&[vec![0, 1]], &a1, &a0).unwrap_err();
        assert_eq!(err, HomViolation::Function { symbol: "u_0".into(), args: vec!["a".into()] });
    }

    #[test]
    fn closed_monos_of_posets_are_embeddings() {
        let pos = theories::pos();
        let discrete = Arc::new(structures::antichain(2));
        let c2 = Arc::new(structures::chain(2));
        let h = Homomorphism::new(discrete, c2, vec![vec![0, 1]]).unwrap();
        assert!(!is_closed_mono(&h).unwrap());
        let mut edge = PartialStructure::with_carriers("pos", pos.signature.clone(), vec![vec!["0".into(), "2".into()]]);
        for (a, b) in [(0, 0), (0, 1), (1, 1)] {
            edge.set_rel(0, &[a, b], true);
        }
        let c3 = Arc::new(structures::chain(3));
        let h = Homomorphism::new(Arc::new(edge), c3.clone(), vec![vec![0, 2]]).unwrap();
        assert!(is_closed_mono(&h).unwrap());
        assert!(is_closed_mono(&Homomorphism::identity(c3.clone())).unwrap());
        let collapse = Homomorphism::new(c3, Arc::new(structures::chain(1)), vec![vec![0, 0, 0]]).unwrap();
        assert!(matches!(is_closed_mono(&collapse), Err(Error::NotInjective(_))));
    }

    #[test]
    fn surjectivity() {
        let c2 = Arc::new(structures::chain(2));
        let one = Arc::new(structures::chain(1));
        assert!(Homomorphism::new(c2.clone(), one.clone(), vec![vec![0, 0]]).unwrap().is_surjective());
        assert!(!Homomorphism::new(one, c2, vec![vec![0]]).unwrap().is_surjective());
    }
}
