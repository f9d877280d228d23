use serde_json::{json, Value};

use crate::error::{Error, Result};

/// A finite partial order stored as its full `≤` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    pub elements: Vec<String>,
    pub leq: Vec<Vec<bool>>,
}

impl FinitePoset {
    /// Checks reflexivity, antisymmetry and transitivity.
    pub fn new(elements: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = elements.len();
        let bad = |m: &str| Err(Error::IllFormed(format!("not a partial order: {m}")));
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return bad("matrix shape");
        }
        for i in 0..n {
            if !leq[i][i] {
                return bad("not reflexive");
            }
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return bad("not antisymmetric");
                }
                for k in 0..n {
                    if leq[i][j] && leq[j][k] && !leq[i][k] {
                        return bad("not transitive");
                    }
                }
            }
        }
        Ok(FinitePoset { elements, leq })
    }

    /// Reflexive-transitive closure of `pairs`.
    pub fn from_pairs(elements: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = elements.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in pairs {
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    let via = leq[k].clone();
                    leq[i].iter_mut().zip(via).for_each(|(x, y)| *x |= y);
                }
            }
        }
        FinitePoset::new(elements, leq)
    }

    pub fn chain(n: usize) -> Self {
        let leq = (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect();
        FinitePoset { elements: (0..n).map(|i| i.to_string()).collect(), leq }
    }

    pub fn antichain(n: usize) -> Self {
        let leq = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
        FinitePoset { elements: (0..n).map(|i| i.to_string()).collect(), leq }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_total(&self) -> bool {
        (0..self.len()).all(|i| (0..self.len()).all(|j| self.leq[i][j] || self.leq[j][i]))
    }

    /// Componentwise product, elements labelled `(a,b)`.
    pub fn product(&self, other: &FinitePoset) -> FinitePoset {
        let (n, m) = (self.len(), other.len());
        let elements = (0..n * m)
            .map(|i| format!("({},{})", self.elements[i / m], other.elements[i % m]))
            .collect();
        let leq = (0..n * m)
            .map(|i| (0..n * m).map(|j| self.leq[i / m][j / m] && other.leq[i % m][j % m]).collect())
            .collect();
        FinitePoset { elements, leq }
    }

    /// The sub-poset on `keep`, in the given order.
    pub fn restrict(&self, keep: &[usize]) -> FinitePoset {
        FinitePoset {
            elements: keep.iter().map(|&i| self.elements[i].clone()).collect(),
            leq: keep.iter().map(|&i| keep.iter().map(|&j| self.leq[i][j]).collect()).collect(),
        }
    }

    /// Whether `f` is an order embedding into `other`
    /// (`x ≤ y` iff `f x ≤ f y`).
    pub fn is_order_embedding(&self, other: &FinitePoset, f: &[usize]) -> bool {
        f.len() == self.len()
            && (0..self.len()).all(|i| (0..self.len()).all(|j| self.leq[i][j] == other.leq[f[i]][f[j]]))
    }

    /// `{"elements": [...], "leq": [[i, j], ...]}` listing every related pair.
    pub fn to_json(&self) -> Value {
        let pairs: Vec<[usize; 2]> = (0..self.len())
            .flat_map(|i| (0..self.len()).filter(move |&j| self.leq[i][j]).map(move |j| [i, j]))
            .collect();
        json!({ "elements": self.elements, "leq": pairs })
    }

    fn profile(&self, i: usize) -> (usize, usize) {
        let below = (0..self.len()).filter(|&j| self.leq[j][i]).count();
        let above = (0..self.len()).filter(|&j| self.leq[i][j]).count();
        (below, above)
    }
}

/// An order isomorphism `a → b`, if one exists.
pub fn find_isomorphism(a: &FinitePoset, b: &FinitePoset) -> Option<Vec<usize>> {
    let n = a.len();
    if n != b.len() {
        return None;
    }
    let (pa, pb): (Vec<_>, Vec<_>) = ((0..n).map(|i| a.profile(i)).collect(), (0..n).map(|i| b.profile(i)).collect());
    let mut sa = pa.clone();
    let mut sb = pb.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }
    fn go(a: &FinitePoset, b: &FinitePoset, pa: &[(usize, usize)], pb: &[(usize, usize)], f: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let i = f.len();
        if i == a.len() {
            return true;
        }
        for j in 0..b.len() {
            if used[j] || pa[i] != pb[j] {
                continue;
            }
            if (0..i).all(|x| a.leq[x][i] == b.leq[f[x]][j] && a.leq[i][x] == b.leq[j][f[x]]) {
                used[j] = true;
                f.push(j);
                if go(a, b, pa, pb, f, used) {
                    return true;
                }
                f.pop();
                used[j] = false;
            }
        }
        false
    }
    let mut f = Vec::with_capacity(n);
    go(a, b, &pa, &pb, &mut f, &mut vec![false; n]).then_some(f)
}
