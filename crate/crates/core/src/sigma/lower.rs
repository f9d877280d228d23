use serde_json::{json, Value};

use super::FinitePoset;
use crate::error::{Error, Result};

/// Most down-sets [`lower_set_lattice`] will materialize.
pub const MAX_DOWN_SETS: usize = 1 << 20;

/// A down-closed subset with its generating antichain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DownSet {
    pub members: Vec<bool>,
    /// Maximal elements, ascending.
    pub generators: Vec<usize>,
}

impl DownSet {
    pub fn is_principal(&self) -> bool {
        self.generators.len() == 1
    }

    pub fn size(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    fn label(&self, base: &FinitePoset) -> String {
        let names: Vec<&str> = self.generators.iter().map(|&g| base.elements[g].as_str()).collect();
        format!("↓{{{}}}", names.join(", "))
    }
}

/// All down-sets of a finite poset ordered by inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerSetLattice {
    pub base: FinitePoset,
    /// Ordered by size, then by membership.
    pub sets: Vec<DownSet>,
    pub lattice: FinitePoset,
}

impl LowerSetLattice {
    /// The sub-poset of down-sets with at most `m` generators, as indices
    /// into `sets` and the induced order.
    pub fn generated_by_at_most(&self, m: usize) -> (Vec<usize>, FinitePoset) {
        let keep: Vec<usize> = (0..self.sets.len()).filter(|&i| self.sets[i].generators.len() <= m).collect();
        let sub = self.lattice.restrict(&keep);
        (keep, sub)
    }

    /// Index of the down-set with exactly these members.
    pub fn position(&self, members: &[bool]) -> Option<usize> {
        self.sets.iter().position(|d| d.members == members)
    }

    pub fn to_json(&self) -> Value {
        let sets: Vec<Value> = self
            .sets
            .iter()
            .map(|d| json!({ "generators": d.generators, "principal": d.is_principal() }))
            .collect();
        json!({ "sets": sets, "lattice": self.lattice.to_json() })
    }
}

/// Maximal elements of a down-set; errors if `set` is not down-closed.
pub fn generators_of_lower_set(p: &FinitePoset, set: &[bool]) -> Result<Vec<usize>> {
    let n = p.len();
    if set.len() != n {
        return Err(Error::IllFormed(format!("subset mask has {} entries for {n} elements", set.len())));
    }
    for y in (0..n).filter(|&y| set[y]) {
        if (0..n).any(|x| p.leq[x][y] && !set[x]) {
            return Err(Error::NotDownClosed);
        }
    }
    Ok((0..n).filter(|&x| set[x] && !(0..n).any(|y| y != x && set[y] && p.leq[x][y])).collect())
}

/// Enumerates every down-set of `p`, guarded by [`MAX_DOWN_SETS`].
pub fn lower_set_lattice(p: &FinitePoset) -> Result<LowerSetLattice> {
    let n = p.len();
    // Elements sorted by the number of elements below them form a linear
    // extension; an element may join once everything strictly below it has.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| ((0..n).filter(|&y| p.leq[y][x]).count(), x));
    let mut found = Vec::new();
    let mut current = vec![false; n];
    fn go(p: &FinitePoset, order: &[usize], i: usize, current: &mut Vec<bool>, found: &mut Vec<Vec<bool>>) -> Result<()> {
        if i == order.len() {
            if found.len() >= MAX_DOWN_SETS {
                return Err(Error::SizeBound(format!("more than {MAX_DOWN_SETS} down-sets")));
            }
            found.push(current.clone());
            return Ok(());
        }
        go(p, order, i + 1, current, found)?;
        let x = order[i];
        if (0..p.len()).all(|y| y == x || !p.leq[y][x] || current[y]) {
            current[x] = true;
            go(p, order, i + 1, current, found)?;
            current[x] = false;
        }
        Ok(())
    }
    go(p, &order, 0, &mut current, &mut found)?;
    found.sort_by(|a, b| {
        let size = |s: &Vec<bool>| s.iter().filter(|&&x| x).count();
        size(a).cmp(&size(b)).then_with(|| b.cmp(a))
    });
    let sets: Vec<DownSet> = found
        .into_iter()
        .map(|members| {
            let generators = generators_of_lower_set(p, &members).expect("enumerated sets are down-closed");
            DownSet { members, generators }
        })
        .collect();
    let m = sets.len();
    let leq = (0..m)
        .map(|i| (0..m).map(|j| (0..n).all(|x| !sets[i].members[x] || sets[j].members[x])).collect())
        .collect();
    let elements = sets.iter().map(|d| d.label(p)).collect();
    Ok(LowerSetLattice { base: p.clone(), sets, lattice: FinitePoset { elements, leq } })
}
