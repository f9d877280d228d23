//! Properties of local retractions checked on one sampled instance.
//!
//! An instance is a map `p : a → b` between models of a small universe, a
//! map `q : b → c` and a map `f : d → b`, each picked by index. Probes are the
//! universe models, so `b` is always a probe.

use std::collections::BTreeMap;
use std::sync::Arc;

use phl::closure::enumerate_models;
use phl::corpus::theories;
use phl::homsearch::{local_retraction_check, RetractionRule};
use phl::semantics::{pullback, Homomorphism, PartialStructure};
use phl::syntax::Theory;

use super::{is_surjective, naive_homs, naive_section};

pub struct Lab {
    pub name: String,
    pub models: Vec<Arc<PartialStructure>>,
    pub probes: Vec<PartialStructure>,
    /// Probes with at most one element in total, for theories of plain sets.
    pub point_probes: Option<Vec<PartialStructure>>,
}

impl Lab {
    pub fn new(t: Arc<Theory>, k: usize, set_like: bool) -> Self {
        let u = enumerate_models(&t, k).unwrap();
        let probes: Vec<PartialStructure> = u.models.iter().map(|m| (**m).clone()).collect();
        let point_probes = set_like.then(|| probes.iter().filter(|g| g.total_size() <= 1).cloned().collect());
        Lab { name: format!("{} k={k}", t.name), models: u.models.clone(), probes, point_probes }
    }

    fn passes(&self, p: &Homomorphism) -> bool {
        local_retraction_check(p, RetractionRule::Probes(&self.probes)).unwrap().passed()
    }
}

pub fn labs() -> Vec<Lab> {
    vec![
        Lab::new(theories::set(), 3, true),
        Lab::new(theories::set2(), 2, true),
        Lab::new(theories::pos(), 3, false),
        Lab::new(theories::urel(), 2, false),
        Lab::new(theories::per(), 2, false),
        Lab::new(theories::idem(), 2, false),
        Lab::new(theories::rquiv(), 2, false),
    ]
}

fn pick_hom(lab: &Lab, a: usize, b: usize, which: usize) -> Option<Homomorphism> {
    let (a, b) = (&lab.models[a], &lab.models[b]);
    let homs = naive_homs(a, b);
    let maps = homs.get(which % homs.len().max(1))?.clone();
    Some(Homomorphism::new(a.clone(), b.clone(), maps).unwrap())
}

/// How often each implication had a true premise, and a description of
/// every failed one.
#[derive(Default, Debug)]
pub struct Outcome {
    pub exercised: BTreeMap<&'static str, usize>,
    pub violations: Vec<String>,
}

impl Outcome {
    pub fn absorb(&mut self, other: Outcome) {
        for (k, n) in other.exercised {
            *self.exercised.entry(k).or_default() += n;
        }
        self.violations.extend(other.violations);
    }

    fn implies(&mut self, premise: bool, conclusion: impl FnOnce() -> bool, what: &'static str, lab: &Lab, picks: &[usize]) {
        if premise {
            *self.exercised.entry(what).or_default() += 1;
            if !conclusion() {
                self.violations.push(format!("{what} fails in {} at {picks:?}", lab.name));
            }
        }
    }
}

pub fn check_instance(lab: &Lab, picks: &[usize; 7]) -> Outcome {
    let n = lab.models.len();
    let mut out = Outcome::default();
    let a = picks[0] % n;
    let mut b = picks[1] % n;
    let p = match pick_hom(lab, a, b, picks[2]) {
        Some(p) => p,
        None => {
            b = a;
            pick_hom(lab, a, a, picks[2]).expect("identity")
        }
    };
    let p_passes = lab.passes(&p);
    let section = naive_section(&p.maps, &p.source, &p.target).is_some();
    out.implies(section, || p_passes, "retraction => probe-pass", lab, picks);
    out.implies(p_passes, || section, "probe-pass onto a probe => section", lab, picks);
    if let Some(points) = &lab.point_probes {
        let passes = local_retraction_check(&p, RetractionRule::Probes(points)).unwrap().passed();
        out.implies(passes, || is_surjective(&p.maps, &p.target), "point-probe-pass => surjective", lab, picks);
    }
    if let Some(q) = pick_hom(lab, b, picks[3] % n, picks[4]) {
        let qp = p.then(&q).unwrap();
        let (q_passes, qp_passes) = (lab.passes(&q), lab.passes(&qp));
        out.implies(p_passes && q_passes, || qp_passes, "composition", lab, picks);
        out.implies(qp_passes, || q_passes, "right cancellation", lab, picks);
    }
    if let Some(f) = pick_hom(lab, picks[5] % n, b, picks[6]) {
        let (pb, _, to_d) = pullback(&p, &f).unwrap();
        let base_change = Homomorphism::new(Arc::new(pb), f.source.clone(), to_d).unwrap();
        out.implies(p_passes, || lab.passes(&base_change), "pullback stability", lab, picks);
    }
    out
}
