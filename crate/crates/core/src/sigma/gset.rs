use serde_json::{json, Value};

use super::{
    classify_components, condense_sigma, lower_set_lattice, subgroups, FiniteGroup, FinitePoset, HomQuiver, Subgroup,
    DEFAULT_GROUP_BOUND,
};
use crate::corpus::theories;
use crate::error::{Error, Result};
use crate::semantics::PartialStructure;

/// Subgroups of a finite group with an edge `H → K` whenever some
/// conjugate of `H` lies in `K`.
#[derive(Clone, Debug)]
pub struct SubgroupCategory {
    pub subgroups: Vec<Subgroup>,
    pub quiver: HomQuiver,
}

pub fn subgroup_category(g: &FiniteGroup, bound: usize) -> Result<SubgroupCategory> {
    let subs = subgroups(g, bound)?;
    let edges = subs
        .iter()
        .map(|h| subs.iter().map(|k| (0..g.order()).any(|x| g.conjugates_into(x, &h.members, &k.members))).collect())
        .collect();
    let labels = subs.iter().map(|h| h.label(g)).collect();
    Ok(SubgroupCategory { subgroups: subs, quiver: HomQuiver::new(labels, edges) })
}

/// The transitive `G`-set `G/H` of left cosets over [`theories::gset`],
/// cosets labelled by their least member.
pub fn coset_gset(g: &FiniteGroup, h: &Subgroup) -> PartialStructure {
    let (cosets, index) = cosets(g, h);
    let t = theories::gset(g);
    let labels = cosets.iter().map(|&x| g.elements[x].clone()).collect();
    let mut m = PartialStructure::with_carriers(&t.name, t.signature.clone(), vec![labels]);
    for a in 0..g.order() {
        for (c, &x) in cosets.iter().enumerate() {
            m.set_func(a, &[c], Some(index[g.mul(a, x)]));
        }
    }
    m
}

/// Least representative of each left coset, and the coset index of every
/// element.
fn cosets(g: &FiniteGroup, h: &Subgroup) -> (Vec<usize>, Vec<usize>) {
    let mut index = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if index[x] != usize::MAX {
            continue;
        }
        for y in (0..g.order()).filter(|&y| h.members[y]) {
            index[g.mul(x, y)] = reps.len();
        }
        reps.push(x);
    }
    (reps, index)
}

/// The disjoint union of `counts[c]` copies of each orbit in `orbits`.
fn sum_of_orbits(orbits: &[PartialStructure], counts: &[usize]) -> PartialStructure {
    let first = &orbits[0];
    let total: usize = orbits.iter().zip(counts).map(|(o, &n)| o.size(0) * n).sum();
    let mut m = PartialStructure::empty(&first.signature_name, first.sig.clone(), &[total]);
    let mut base = 0;
    for (o, &n) in orbits.iter().zip(counts) {
        for _ in 0..n {
            for f in 0..o.sig.functions.len() {
                for (t, v) in o.func_entries(f) {
                    m.set_func(f, &[base + t[0]], Some(base + v));
                }
            }
            base += o.size(0);
        }
    }
    m
}

fn count_vectors(sizes: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn go(sizes: &[usize], left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let i = cur.len();
        if i == sizes.len() {
            out.push(cur.clone());
            return;
        }
        for n in 0..=left / sizes[i] {
            cur.push(n);
            go(sizes, left - n * sizes[i], cur, out);
            cur.pop();
        }
    }
    go(sizes, k, &mut Vec::new(), &mut out);
    out.sort_by_key(|c| (c.iter().zip(sizes).map(|(n, s)| n * s).sum::<usize>(), c.clone()));
    out
}

#[derive(Clone, Debug)]
pub struct GsetReport {
    pub group: String,
    pub bound: usize,
    pub gsets: usize,
    pub subgroups: usize,
    pub subgroup_components: usize,
    /// Components among `G`-sets of size ≤ bound.
    pub left: FinitePoset,
    /// Down-sets of the posetified subgroup category.
    pub right: FinitePoset,
    /// `left[i] ↦ right[isomorphism[i]]`: a `G`-set goes to the down-set
    /// generated by the classes of its point stabilizers.
    pub isomorphism: Option<Vec<usize>>,
    pub counterexample: Option<String>,
}

impl GsetReport {
    pub fn passed(&self) -> bool {
        self.isomorphism.is_some()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "group": self.group,
            "bound": self.bound,
            "gsets": self.gsets,
            "subgroups": self.subgroups,
            "subgroup_components": self.subgroup_components,
            "left": self.left.to_json(),
            "right": self.right.to_json(),
            "isomorphism": self.isomorphism,
            "counterexample": self.counterexample,
            "passed": self.passed(),
        })
    }
}

/// Compares the posetification of all `G`-sets with at most `k` points
/// against the down-sets of the posetified subgroup category.
///
/// `G`-sets are generated up to isomorphism as sums of coset spaces `G/H`,
/// one `H` per conjugacy class; their components are then found by plain
/// homomorphism search.
pub fn gset_sigma_check(g: &FiniteGroup, k: usize) -> Result<GsetReport> {
    let cat = subgroup_category(g, DEFAULT_GROUP_BOUND)?;
    let sub_sigma = condense_sigma(&cat.quiver);
    let need = g.order() * sub_sigma.len();
    if k < need {
        return Err(Error::SizeBound(format!(
            "bound {k} is below |G| x (subgroup components) = {need}; not every down-set would be realized"
        )));
    }
    let lattice = lower_set_lattice(&sub_sigma.order)?;
    let orbits: Vec<PartialStructure> =
        sub_sigma.components.iter().map(|c| coset_gset(g, &cat.subgroups[c[0]])).collect();
    let sizes: Vec<usize> = orbits.iter().map(|o| o.size(0)).collect();
    let counts = count_vectors(&sizes, k);
    let family: Vec<PartialStructure> = counts.iter().map(|c| sum_of_orbits(&orbits, c)).collect();
    let sigma = classify_components(&family);

    let mut image = Vec::with_capacity(sigma.len());
    let mut counterexample = None;
    for comp in &sigma.components {
        let c = &counts[comp[0]];
        let members: Vec<bool> = (0..sub_sigma.len())
            .map(|d| (0..sub_sigma.len()).any(|e| c[e] > 0 && sub_sigma.order.leq[d][e]))
            .collect();
        image.push(lattice.position(&members).expect("generated sets are down-sets"));
    }
    let mut hit = vec![false; lattice.sets.len()];
    image.iter().for_each(|&j| hit[j] = true);
    if image.len() != lattice.sets.len() || hit.iter().any(|h| !h) {
        counterexample = Some(format!("{} G-set components against {} down-sets", image.len(), lattice.sets.len()));
    } else if !sigma.order.is_order_embedding(&lattice.lattice, &image) {
        counterexample = Some("the stabilizer map does not preserve and reflect the order".into());
    }
    Ok(GsetReport {
        group: g.name.clone(),
        bound: k,
        gsets: family.len(),
        subgroups: cat.subgroups.len(),
        subgroup_components: sub_sigma.len(),
        left: sigma.order,
        right: lattice.lattice,
        isomorphism: counterexample.is_none().then_some(image),
        counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::is_model;

    #[test]
    fn subgroup_categories() {
        let c2 = subgroup_category(&FiniteGroup::cyclic(2), 24).unwrap();
        assert_eq!(c2.quiver.edges, vec![vec![true, true], vec![false, true]]);
        let c4 = subgroup_category(&FiniteGroup::cyclic(4), 24).unwrap();
        assert!(condense_sigma(&c4.quiver).order.is_total());
        let s3 = subgroup_category(&FiniteGroup::symmetric3(), 24).unwrap();
        let order2: Vec<usize> = (0..6).filter(|&i| s3.subgroups[i].order() == 2).collect();
        assert_eq!(order2.len(), 3);
        for &a in &order2 {
            for &b in &order2 {
                assert!(s3.quiver.edges[a][b]);
            }
        }
        assert_eq!(condense_sigma(&s3.quiver).len(), 4);
    }

    #[test]
    fn coset_spaces_are_models() {
        let g = FiniteGroup::symmetric3();
        let t = theories::gset(&g);
        for h in subgroups(&g, 24).unwrap() {
            let m = coset_gset(&g, &h);
            assert_eq!(m.size(0) * h.order(), 6);
            assert!(is_model(&m, &t).unwrap());
        }
    }

    #[test]
    fn small_groups() {
        let r = gset_sigma_check(&FiniteGroup::trivial(), 2).unwrap();
        assert!(r.passed());
        assert_eq!(r.left.len(), 2);
        let r = gset_sigma_check(&FiniteGroup::cyclic(2), 4).unwrap();
        assert!(r.passed());
        assert!(r.left.is_total() && r.left.len() == 3);
    }

    #[test]
    fn small_bounds_are_rejected() {
        assert!(matches!(gset_sigma_check(&FiniteGroup::cyclic(2), 3), Err(Error::SizeBound(_))));
    }
}
