use serde_json::{json, Value};

use super::{condense_sigma, lower_set_lattice, FinitePoset, HomQuiver};
use crate::error::{Error, Result};

/// Most formal families [`verify_fam_theorem`] will materialize.
pub const MAX_FAMILIES: usize = 20_000;

#[derive(Clone, Debug)]
pub struct FamReport {
    pub families: usize,
    /// The posetification of the formal families.
    pub left: FinitePoset,
    /// Down-sets of the base posetification generated by at most `m` elements.
    pub right: FinitePoset,
    /// `left[i] ↦ right[isomorphism[i]]`, the canonical map sending a family
    /// to the down-set its members generate.
    pub isomorphism: Option<Vec<usize>>,
    pub counterexample: Option<String>,
}

impl FamReport {
    pub fn passed(&self) -> bool {
        self.isomorphism.is_some()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "families": self.families,
            "left": self.left.to_json(),
            "right": self.right.to_json(),
            "isomorphism": self.isomorphism,
            "counterexample": self.counterexample,
            "passed": self.passed(),
        })
    }
}

fn multisets(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..m {
        let mut next = Vec::new();
        for f in &frontier {
            let start = f.last().copied().unwrap_or(0);
            for v in start..n {
                let mut g: Vec<usize> = f.clone();
                g.push(v);
                next.push(g);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn multiset_count(n: usize, m: usize) -> usize {
    // Σ_{j ≤ m} C(n + j - 1, j), saturating.
    let mut total: usize = 0;
    let mut term: u128 = 1;
    for j in 0..=m {
        if j > 0 {
            term = term * (n + j - 1) as u128 / j as u128;
        }
        total = total.saturating_add(usize::try_from(term).unwrap_or(usize::MAX));
    }
    total
}

/// Compares the posetification of formal families of size ≤ `m` over `a`
/// with the down-sets of `σ(a)` generated by at most `m` elements.
pub fn verify_fam_theorem(a: &HomQuiver, m: usize) -> Result<FamReport> {
    let n = a.len();
    let count = multiset_count(n, m);
    if count > MAX_FAMILIES {
        return Err(Error::SizeBound(format!("{count} formal families exceed {MAX_FAMILIES}")));
    }
    let fams = multisets(n, m);
    let edges: Vec<Vec<bool>> = fams
        .iter()
        .map(|f| fams.iter().map(|g| f.iter().all(|&x| g.iter().any(|&y| a.edges[x][y]))).collect())
        .collect();
    let labels = fams
        .iter()
        .map(|f| {
            let names: Vec<&str> = f.iter().map(|&x| a.labels[x].as_str()).collect();
            format!("[{}]", names.join(", "))
        })
        .collect();
    let fam_sigma = condense_sigma(&HomQuiver::new(labels, edges));
    let base = condense_sigma(a);
    let lattice = lower_set_lattice(&base.order)?;
    let (keep, right) = lattice.generated_by_at_most(m);

    let mut image = Vec::with_capacity(fam_sigma.len());
    let mut counterexample = None;
    for comp in &fam_sigma.components {
        let f = &fams[comp[0]];
        let mut members = vec![false; base.len()];
        for &x in f {
            let c = base.component_of[x];
            for (d, slot) in members.iter_mut().enumerate() {
                *slot |= base.order.leq[d][c];
            }
        }
        match lattice.position(&members).and_then(|i| keep.iter().position(|&k| k == i)) {
            Some(j) => image.push(j),
            None => {
                counterexample = Some(format!("family {} generates no admissible down-set", fam_sigma.order.elements[image.len()]));
                break;
            }
        }
    }
    if counterexample.is_none() {
        let mut hit = vec![false; right.len()];
        image.iter().for_each(|&j| hit[j] = true);
        if image.len() != right.len() || hit.iter().any(|h| !h) {
            counterexample = Some(format!("{} family classes against {} down-sets", image.len(), right.len()));
        } else if !fam_sigma.order.is_order_embedding(&right, &image) {
            counterexample = Some("the canonical map does not preserve and reflect the order".into());
        }
    }
    Ok(FamReport {
        families: fams.len(),
        left: fam_sigma.order,
        right,
        isomorphism: counterexample.is_none().then_some(image),
        counterexample,
    })
}
