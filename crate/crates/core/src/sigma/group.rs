use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// Largest group order accepted by [`subgroups`] and friends.
pub const DEFAULT_GROUP_BOUND: usize = 24;

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    pub name: String,
    pub elements: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

#[derive(Deserialize, Serialize)]
struct GroupJson {
    #[serde(default)]
    name: Option<String>,
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    /// Checks closure, associativity, the identity and inverses.
    pub fn new(name: impl Into<String>, elements: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let name = name.into();
        let n = elements.len();
        let bad = |msg: String| Error::InvalidGroup(format!("{name}: {msg}"));
        if n == 0 {
            return Err(bad("no elements".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(bad(format!("table must be {n} x {n}")));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(bad("table entry out of range".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(bad(format!(
                            "not associative at ({}, {}, {})",
                            elements[a], elements[b], elements[c]
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| bad("no identity".into()))?;
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == identity).ok_or_else(|| bad(format!("{} has no inverse", elements[a]))))
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteGroup { name, elements, table, identity, inverse })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let g: GroupJson = serde_json::from_value(value.clone())?;
        FiniteGroup::new(g.name.unwrap_or_else(|| "G".into()), g.elements, g.table)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(GroupJson { name: Some(self.name.clone()), elements: self.elements.clone(), table: self.table.clone() })
            .expect("group serializes")
    }

    pub fn trivial() -> Self {
        FiniteGroup::cyclic(1).renamed("trivial")
    }

    /// `C_n` as addition modulo `n`.
    pub fn cyclic(n: usize) -> Self {
        let elements = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::new(format!("C{n}"), elements, table).expect("cyclic groups are groups")
    }

    /// `S_3` as permutations of `{0, 1, 2}`, composed right to left.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let elements = perms.iter().map(|p| format!("{}{}{}", p[0], p[1], p[2])).collect();
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed under composition");
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| index([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect();
        FiniteGroup::new("S3", elements, table).expect("S3 is a group")
    }

    /// `trivial`, `C<n>` or `S3`.
    pub fn by_name(name: &str) -> Option<Self> {
        match name.trim() {
            "trivial" | "1" => Some(FiniteGroup::trivial()),
            "S3" | "s3" => Some(FiniteGroup::symmetric3()),
            other => {
                let n: usize = other.strip_prefix(['C', 'c'])?.parse().ok()?;
                (n >= 1).then(|| FiniteGroup::cyclic(n))
            }
        }
    }

    fn renamed(mut self, name: &str) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// The subgroup generated by `gens`, as a membership mask.
    pub fn generated(&self, gens: &[bool]) -> Vec<bool> {
        let mut mem = vec![false; self.order()];
        mem[self.identity] = true;
        let mut frontier = vec![self.identity];
        let gens: Vec<usize> = (0..self.order()).filter(|&g| gens[g]).collect();
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !mem[y] {
                    mem[y] = true;
                    frontier.push(y);
                }
            }
        }
        mem
    }

    /// Whether `g H g⁻¹ ⊆ K`.
    pub fn conjugates_into(&self, g: usize, h: &[bool], k: &[bool]) -> bool {
        (0..self.order()).filter(|&x| h[x]).all(|x| k[self.mul(self.mul(g, x), self.inv(g))])
    }
}

/// A subgroup as a membership mask over the group's elements.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup {
    pub members: Vec<bool>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn label(&self, g: &FiniteGroup) -> String {
        let names: Vec<&str> = (0..g.order()).filter(|&x| self.members[x]).map(|x| g.elements[x].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// Every subgroup of `g`, ordered by size and then by membership. Each
/// subgroup is reached from the trivial one by adjoining one element at a
/// time.
pub fn subgroups(g: &FiniteGroup, bound: usize) -> Result<Vec<Subgroup>> {
    if g.order() > bound {
        return Err(Error::SizeBound(format!("group {} has order {} > {bound}", g.name, g.order())));
    }
    let trivial = g.generated(&vec![false; g.order()]);
    let mut seen = std::collections::BTreeSet::from([trivial.clone()]);
    let mut frontier = vec![trivial];
    while let Some(h) = frontier.pop() {
        for x in 0..g.order() {
            if h[x] {
                continue;
            }
            let mut gens = h.clone();
            gens[x] = true;
            let k = g.generated(&gens);
            if seen.insert(k.clone()) {
                frontier.push(k);
            }
        }
    }
    let mut out: Vec<Subgroup> = seen.into_iter().map(|members| Subgroup { members }).collect();
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| b.members.cmp(&a.members)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_groups_validate() {
        for g in [FiniteGroup::trivial(), FiniteGroup::cyclic(2), FiniteGroup::cyclic(4), FiniteGroup::symmetric3()] {
            assert_eq!(FiniteGroup::from_json(&g.to_json()).unwrap(), g);
        }
        let s3 = FiniteGroup::symmetric3();
        assert_eq!(s3.identity(), 0);
        assert!((0..6).all(|a| s3.mul(a, s3.inv(a)) == 0));
    }

    #[test]
    fn invalid_tables_are_rejected() {
        let els = vec!["a".to_string(), "b".to_string()];
        let not_group = FiniteGroup::new("bad", els.clone(), vec![vec![0, 0], vec![0, 0]]);
        assert!(matches!(not_group, Err(Error::InvalidGroup(_))));
        assert!(FiniteGroup::new("bad", els, vec![vec![0, 1]]).is_err());
    }

    #[test]
    fn subgroup_counts() {
        let count = |g: FiniteGroup| subgroups(&g, DEFAULT_GROUP_BOUND).unwrap().len();
        assert_eq!(count(FiniteGroup::trivial()), 1);
        assert_eq!(count(FiniteGroup::cyclic(2)), 2);
        assert_eq!(count(FiniteGroup::cyclic(4)), 3);
        assert_eq!(count(FiniteGroup::symmetric3()), 6);
        assert_eq!(count(FiniteGroup::cyclic(6)), 4);
    }

    #[test]
    fn group_bound_is_enforced() {
        assert!(matches!(subgroups(&FiniteGroup::cyclic(30), 24), Err(Error::SizeBound(_))));
    }

    #[test]
    fn names_resolve() {
        assert_eq!(FiniteGroup::by_name("C4").unwrap().order(), 4);
        assert_eq!(FiniteGroup::by_name("trivial").unwrap().order(), 1);
        assert!(FiniteGroup::by_name("C0").is_none());
        assert!(FiniteGroup::by_name("Q8").is_none());
    }
}
