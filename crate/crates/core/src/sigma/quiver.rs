use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::FinitePoset;
use crate::error::{Error, Result};
use crate::homsearch::hom_exists;
use crate::semantics::PartialStructure;

/// Hom-existence between the members of a finite family: `edges[i][j]` iff
/// there is a morphism `i → j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomQuiver {
    pub labels: Vec<String>,
    pub edges: Vec<Vec<bool>>,
}

impl HomQuiver {
    pub fn new(labels: Vec<String>, edges: Vec<Vec<bool>>) -> Self {
        assert_eq!(labels.len(), edges.len(), "one edge row per vertex");
        HomQuiver { labels, edges }
    }

    /// The quiver of a finite poset's order relation.
    pub fn from_poset(p: &FinitePoset) -> Self {
        HomQuiver::new(p.elements.clone(), p.leq.clone())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Whether loops are present and edges compose.
    pub fn is_preorder(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| self.edges[i][i])
            && (0..n).all(|i| (0..n).all(|j| !self.edges[i][j] || (0..n).all(|k| !self.edges[j][k] || self.edges[i][k])))
    }
}

/// Hom-existence quiver of `family`, one search per ordered pair.
pub fn build_hom_quiver(family: &[PartialStructure]) -> Result<HomQuiver> {
    if let Some(first) = family.first() {
        if let Some(m) = family.iter().find(|m| m.sig != first.sig) {
            return Err(Error::SignatureMismatch(format!(
                "family mixes `{}` and `{}`",
                first.signature_name, m.signature_name
            )));
        }
    }
    let n = family.len();
    let edges: Vec<Vec<bool>> = (0..n)
        .into_par_iter()
        .map(|i| (0..n).map(|j| i == j || hom_exists(&family[i], &family[j])).collect())
        .collect();
    let labels = family.iter().enumerate().map(|(i, m)| format!("#{i}:{}", m.summary())).collect();
    Ok(HomQuiver::new(labels, edges))
}

/// The posetification of a hom quiver: its strongly connected components
/// ordered by reachability.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaPoset {
    /// Members of each component, ascending; components are ordered by
    /// their least member.
    pub components: Vec<Vec<usize>>,
    pub component_of: Vec<usize>,
    /// Order on components, labelled by their least member's label.
    pub order: FinitePoset,
}

impl SigmaPoset {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({ "components": self.components, "poset": self.order.to_json() })
    }
}

pub fn condense_sigma(q: &HomQuiver) -> SigmaPoset {
    let n = q.len();
    let mut g = DiGraph::<(), ()>::with_capacity(n, 0);
    let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
    for i in 0..n {
        for j in 0..n {
            if i != j && q.edges[i][j] {
                g.add_edge(nodes[i], nodes[j], ());
            }
        }
    }
    let mut components: Vec<Vec<usize>> = tarjan_scc(&g)
        .into_iter()
        .map(|c| {
            let mut c: Vec<usize> = c.into_iter().map(|x| x.index()).collect();
            c.sort_unstable();
            c
        })
        .collect();
    components.sort_unstable();
    let mut component_of = vec![0; n];
    for (c, members) in components.iter().enumerate() {
        for &v in members {
            component_of[v] = c;
        }
    }
    let m = components.len();
    let mut reach = vec![vec![false; m]; m];
    for i in 0..n {
        for j in 0..n {
            if q.edges[i][j] {
                reach[component_of[i]][component_of[j]] = true;
            }
        }
    }
    for (c, row) in reach.iter_mut().enumerate() {
        row[c] = true;
    }
    for k in 0..m {
        for i in 0..m {
            if reach[i][k] {
                let via = reach[k].clone();
                reach[i].iter_mut().zip(via).for_each(|(x, y)| *x |= y);
            }
        }
    }
    let labels = components.iter().map(|c| q.labels[c[0]].clone()).collect();
    SigmaPoset { components, component_of, order: FinitePoset { elements: labels, leq: reach } }
}

/// The posetification of `family` computed against one representative per
/// component: each structure is compared with the representatives found so
/// far, and only representatives are compared with each other. Agrees with
/// `condense_sigma(&build_hom_quiver(family)?)` because hom existence is a
/// preorder, and needs far fewer searches on large families.
pub fn classify_components(family: &[PartialStructure]) -> SigmaPoset {
    let mut reps: Vec<usize> = Vec::new();
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut component_of = Vec::with_capacity(family.len());
    for (i, x) in family.iter().enumerate() {
        let hit = reps
            .par_iter()
            .position_first(|&r| hom_exists(x, &family[r]) && hom_exists(&family[r], x));
        match hit {
            Some(c) => {
                components[c].push(i);
                component_of.push(c);
            }
            None => {
                component_of.push(reps.len());
                reps.push(i);
                components.push(vec![i]);
            }
        }
    }
    let leq: Vec<Vec<bool>> = reps
        .par_iter()
        .map(|&a| reps.iter().map(|&b| a == b || hom_exists(&family[a], &family[b])).collect())
        .collect();
    let elements = reps.iter().map(|&r| format!("#{r}:{}", family[r].summary())).collect();
    SigmaPoset { components, component_of, order: FinitePoset { elements, leq } }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{structures, theories};

    #[test]
    fn set_family_has_empty_below_nonempty() {
        let set = theories::set();
        let fam: Vec<_> = (0..3).map(|n| structures::bare_set(&set, n)).collect();
        let q = build_hom_quiver(&fam).unwrap();
        assert_eq!(q.edges, vec![vec![true; 3], vec![false, true, true], vec![false, true, true]]);
        let s = condense_sigma(&q);
        assert_eq!(s.components, vec![vec![0], vec![1, 2]]);
        assert!(s.order.leq[0][1] && !s.order.leq[1][0]);
    }

    #[test]
    fn bounded_lattices_only_map_up() {
        let q = build_hom_quiver(&[structures::diamond(2), structures::diamond(3)]).unwrap();
        assert_eq!(q.edges, vec![vec![true, true], vec![false, true]]);
    }

    #[test]
    fn condensation_by_hand() {
        let labels = vec!["a".to_string(), "b".into(), "c".into()];
        let t = true;
        let q = HomQuiver::new(labels, vec![vec![t, t, false], vec![t, t, t], vec![false, false, t]]);
        let s = condense_sigma(&q);
        assert_eq!(s.components, vec![vec![0, 1], vec![2]]);
        assert_eq!(s.order.leq, vec![vec![true, true], vec![false, true]]);
        let iso = condense_sigma(&HomQuiver::new(vec!["x".into(), "y".into()], vec![vec![t, false], vec![false, t]]));
        assert_eq!(iso.order, FinitePoset { elements: vec!["x".into(), "y".into()], leq: FinitePoset::antichain(2).leq });
    }

    #[test]
    fn representative_classification_matches_condensation() {
        let fam: Vec<_> = (1..=4).map(structures::cycle).chain([structures::prime_cycles(2)]).collect();
        let direct = condense_sigma(&build_hom_quiver(&fam).unwrap());
        let by_reps = classify_components(&fam);
        assert_eq!(direct.components, by_reps.components);
        assert_eq!(direct.order.leq, by_reps.order.leq);
    }

    #[test]
    fn mixed_signatures_are_rejected() {
        assert!(matches!(build_hom_quiver(&[structures::chain(1), structures::cycle(1)]), Err(Error::SignatureMismatch(_))));
    }
}
