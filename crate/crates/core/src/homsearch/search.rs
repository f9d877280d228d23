//! Backtracking search for homomorphisms between finite partial structures.
//!
//! Variables are the source elements, taken sort by sort in carrier order;
//! values are tried in target carrier order. A function entry `f(ā) = b` of
//! the source is a constraint: once `ā` is mapped, the target entry at the
//! image tuple must exist, and it forces the image of `b`. Relation tuples
//! are checked as soon as their arguments are mapped.

use crate::semantics::{PartialStructure, SortMaps};

#[derive(Clone, Debug)]
enum Constraint {
    /// `f(args) = result` in the source.
    Func { f: usize, args: Vec<usize>, result: usize },
    /// `f(args)` undefined in the source; must stay undefined (reflecting mode).
    Undefined { f: usize, args: Vec<usize> },
    Rel { r: usize, args: Vec<usize> },
    /// `¬R(args)` in the source; must stay false (reflecting mode).
    NotRel { r: usize, args: Vec<usize> },
}

impl Constraint {
    fn args(&self) -> &[usize] {
        match self {
            Constraint::Func { args, .. }
            | Constraint::Undefined { args, .. }
            | Constraint::Rel { args, .. }
            | Constraint::NotRel { args, .. } => args,
        }
    }
}

/// A configurable homomorphism search from `source` to `target`.
pub struct HomSearch<'a> {
    source: &'a PartialStructure,
    target: &'a PartialStructure,
    injective: bool,
    reflecting: bool,
    /// Optional candidate lists per source element, `[sort][element]`.
    domains: Option<Vec<Vec<Vec<usize>>>>,
}

impl<'a> HomSearch<'a> {
    pub fn new(source: &'a PartialStructure, target: &'a PartialStructure) -> Self {
        HomSearch { source, target, injective: false, reflecting: false, domains: None }
    }

    /// Only injective maps.
    pub fn injective(mut self) -> Self {
        self.injective = true;
        self
    }

    /// Only maps that also reflect definedness and relation membership (with
    /// `injective`, exactly the closed monos).
    pub fn reflecting(mut self) -> Self {
        self.reflecting = true;
        self
    }

    /// Restricts the image of each source element to the given candidates.
    pub fn with_domains(mut self, domains: Vec<Vec<Vec<usize>>>) -> Self {
        self.domains = Some(domains);
        self
    }

    pub fn exists(&self) -> bool {
        self.first().is_some()
    }

    pub fn first(&self) -> Option<SortMaps> {
        let mut out = None;
        self.run(|maps| {
            out = Some(maps);
            false
        });
        out
    }

    /// Up to `limit` distinct homomorphisms, in search order.
    pub fn enumerate(&self, limit: usize) -> Vec<SortMaps> {
        let mut out = Vec::new();
        if limit == 0 {
            return out;
        }
        self.run(|maps| {
            out.push(maps);
            out.len() < limit
        });
        out
    }

    /// Calls `visit` on each homomorphism until it returns `false`.
    pub fn for_each(&self, visit: impl FnMut(SortMaps) -> bool) {
        self.run(visit);
    }

    fn run(&self, visit: impl FnMut(SortMaps) -> bool) {
        let (m, n) = (self.source, self.target);
        if *m.sig != *n.sig {
            return;
        }
        let nsorts = m.carriers.len();
        let mut offset = vec![0usize; nsorts + 1];
        for s in 0..nsorts {
            offset[s + 1] = offset[s] + m.size(s);
        }
        let nvars = offset[nsorts];
        let mut sort_of = vec![0usize; nvars];
        for s in 0..nsorts {
            sort_of[offset[s]..offset[s + 1]].fill(s);
        }
        let domains: Vec<Vec<usize>> = (0..nvars)
            .map(|v| {
                let s = sort_of[v];
                match &self.domains {
                    Some(d) => d[s][v - offset[s]].clone(),
                    None => (0..n.size(s)).collect(),
                }
            })
            .collect();
        let var = |s: usize, a: usize| offset[s] + a;
        let mut constraints = Vec::new();
        for (f, sym) in m.sig.functions.iter().enumerate() {
            for (i, entry) in m.funcs[f].iter().enumerate() {
                let tuple = m.decode_tuple(&sym.args, i);
                let args: Vec<usize> = tuple.iter().zip(&sym.args).map(|(&a, &s)| var(s, a)).collect();
                match entry {
                    Some(b) => constraints.push(Constraint::Func { f, args, result: var(sym.result, *b) }),
                    None if self.reflecting => constraints.push(Constraint::Undefined { f, args }),
                    None => {}
                }
            }
        }
        for (r, sym) in m.sig.relations.iter().enumerate() {
            for (i, &held) in m.rels[r].iter().enumerate() {
                let tuple = m.decode_tuple(&sym.args, i);
                let args: Vec<usize> = tuple.iter().zip(&sym.args).map(|(&a, &s)| var(s, a)).collect();
                if held {
                    constraints.push(Constraint::Rel { r, args });
                } else if self.reflecting {
                    constraints.push(Constraint::NotRel { r, args });
                }
            }
        }
        // Nullary constraints are checked once up front.
        let mut watch = vec![Vec::new(); nvars];
        let mut ground = Vec::new();
        for (c, con) in constraints.iter().enumerate() {
            if con.args().is_empty() {
                ground.push(c);
            }
            for &a in con.args() {
                if !watch[a].contains(&c) {
                    watch[a].push(c);
                }
            }
        }
        let mut allowed: Vec<Vec<bool>> = domains
            .iter()
            .enumerate()
            .map(|(v, d)| {
                let mut mask = vec![false; n.size(sort_of[v])];
                d.iter().for_each(|&b| mask[b] = true);
                mask
            })
            .collect();
        node_consistency(n, &constraints, &mut allowed);
        let domains: Vec<Vec<usize>> =
            allowed.iter().map(|mask| (0..mask.len()).filter(|&b| mask[b]).collect()).collect();
        if domains.iter().any(Vec::is_empty) {
            return;
        }
        let mut state = State {
            n,
            sort_of: &sort_of,
            constraints: &constraints,
            watch: &watch,
            allowed,
            injective: self.injective,
            value: vec![None; nvars],
            used: (0..nsorts).map(|s| vec![false; n.size(s)]).collect(),
            trail: Vec::new(),
            queue: Vec::new(),
        };
        if !(ground.iter().all(|&c| state.check(c)) && state.propagate()) {
            return;
        }
        let order = if self.injective {
            (0..nvars).collect()
        } else {
            // Components of the constraint graph are independent; make sure
            // each is solvable on its own so the joint search never
            // backtracks across them.
            let components = components(nvars, &constraints);
            for comp in &components {
                let mut found = false;
                let mut probe = Search { state, domains: &domains, order: comp, offset: &offset, visit: |_| {
                    found = true;
                    false
                }, stop: false };
                probe.descend(0);
                state = probe.state;
                if !found {
                    return;
                }
            }
            components.concat()
        };
        let mut search = Search { state, domains: &domains, order: &order, offset: &offset, visit, stop: false };
        search.descend(0);
    }
}

/// Drops candidates that violate a constraint mentioning a single source
/// element, such as `f(x) = x` or `R(x, x)`.
fn node_consistency(n: &PartialStructure, constraints: &[Constraint], allowed: &mut [Vec<bool>]) {
    for con in constraints {
        let args = con.args();
        let Some(&v) = args.first() else { continue };
        let result = match con {
            Constraint::Func { result, .. } => Some(*result),
            _ => None,
        };
        if args.iter().any(|&a| a != v) || result.is_some_and(|r| r != v) {
            continue;
        }
        for b in 0..allowed[v].len() {
            if !allowed[v][b] {
                continue;
            }
            let t = vec![b; args.len()];
            let ok = match con {
                Constraint::Func { f, .. } => n.func(*f, &t) == Some(b),
                Constraint::Undefined { f, .. } => n.func(*f, &t).is_none(),
                Constraint::Rel { r, .. } => n.rel(*r, &t),
                Constraint::NotRel { r, .. } => !n.rel(*r, &t),
            };
            allowed[v][b] = ok;
        }
    }
}

/// Connected components of the source elements, linked by shared
/// constraints; each component ascending, components by least element.
fn components(nvars: usize, constraints: &[Constraint]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..nvars).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for con in constraints {
        let mut vars: Vec<usize> = con.args().to_vec();
        if let Constraint::Func { result, .. } = con {
            vars.push(*result);
        }
        for w in vars.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in 0..nvars {
        let root = find(&mut parent, v);
        groups.entry(root).or_default().push(v);
    }
    groups.into_values().collect()
}

struct State<'s> {
    n: &'s PartialStructure,
    sort_of: &'s [usize],
    constraints: &'s [Constraint],
    watch: &'s [Vec<usize>],
    allowed: Vec<Vec<bool>>,
    injective: bool,
    value: Vec<Option<usize>>,
    used: Vec<Vec<bool>>,
    trail: Vec<usize>,
    queue: Vec<usize>,
}

impl State<'_> {
    fn assign(&mut self, v: usize, b: usize) -> bool {
        if let Some(old) = self.value[v] {
            return old == b;
        }
        if !self.allowed[v][b] {
            return false;
        }
        let s = self.sort_of[v];
        if self.injective && self.used[s][b] {
            return false;
        }
        self.value[v] = Some(b);
        self.used[s][b] = true;
        self.trail.push(v);
        self.queue.push(v);
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().expect("trail is longer than mark");
            let b = self.value[v].take().expect("trailed variables are assigned");
            self.used[self.sort_of[v]][b] = false;
        }
        self.queue.clear();
    }

    fn image(&self, args: &[usize]) -> Option<Vec<usize>> {
        args.iter().map(|&a| self.value[a]).collect()
    }

    /// Checks constraint `c` if its arguments are mapped, forcing function
    /// results. Returns false on conflict.
    fn check(&mut self, c: usize) -> bool {
        let n = self.n;
        match &self.constraints[c] {
            Constraint::Func { f, args, result } => {
                let Some(t) = self.image(args) else { return true };
                match n.func(*f, &t) {
                    None => false,
                    Some(b) => self.assign(*result, b),
                }
            }
            Constraint::Undefined { f, args } => match self.image(args) {
                Some(t) => n.func(*f, &t).is_none(),
                None => true,
            },
            Constraint::Rel { r, args } => match self.image(args) {
                Some(t) => n.rel(*r, &t),
                None => true,
            },
            Constraint::NotRel { r, args } => match self.image(args) {
                Some(t) => !n.rel(*r, &t),
                None => true,
            },
        }
    }

    fn propagate(&mut self) -> bool {
        while let Some(v) = self.queue.pop() {
            for i in 0..self.watch[v].len() {
                let c = self.watch[v][i];
                if !self.check(c) {
                    return false;
                }
            }
        }
        true
    }
}

struct Search<'s, 'o, F> {
    state: State<'s>,
    domains: &'s [Vec<usize>],
    order: &'o [usize],
    offset: &'s [usize],
    visit: F,
    stop: bool,
}

impl<F: FnMut(SortMaps) -> bool> Search<'_, '_, F> {
    fn descend(&mut self, from: usize) {
        let mut pos = from;
        while pos < self.order.len() && self.state.value[self.order[pos]].is_some() {
            pos += 1;
        }
        if pos == self.order.len() {
            if self.order.len() < self.state.value.len() {
                if !(self.visit)(Vec::new()) {
                    self.stop = true;
                }
                return;
            }
            let maps = (0..self.offset.len() - 1)
                .map(|s| {
                    (self.offset[s]..self.offset[s + 1])
                        .map(|x| self.state.value[x].expect("complete assignment"))
                        .collect()
                })
                .collect();
            if !(self.visit)(maps) {
                self.stop = true;
            }
            return;
        }
        let v = self.order[pos];
        for &b in &self.domains[v] {
            let mark = self.state.trail.len();
            if self.state.assign(v, b) && self.state.propagate() {
                self.descend(pos + 1);
            }
            self.state.undo_to(mark);
            if self.stop {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::structures;
    use crate::semantics::is_homomorphism;

    #[test]
    fn cycles_map_along_divisibility() {
        let (c2, c4) = (structures::cycle(2), structures::cycle(4));
        assert!(HomSearch::new(&c4, &c2).exists());
        assert!(!HomSearch::new(&c2, &c4).exists());
        assert_eq!(HomSearch::new(&c4, &c2).enumerate(100).len(), 2);
        assert_eq!(HomSearch::new(&c4, &c4).enumerate(100).len(), 4);
    }

    #[test]
    fn enumerated_maps_are_distinct_homomorphisms() {
        let c3 = structures::chain(3);
        let all = HomSearch::new(&c3, &c3).enumerate(1000);
        // monotone self-maps of a 3-chain
        assert_eq!(all.len(), 10);
        for h in &all {
            assert!(is_homomorphism(h, &c3, &c3));
        }
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), all.len());
        assert_eq!(HomSearch::new(&c3, &c3).injective().enumerate(100).len(), 1);
    }

    #[test]
    fn reflecting_injections_are_embeddings() {
        let (d2, c2) = (structures::antichain(2), structures::chain(2));
        assert!(HomSearch::new(&d2, &c2).injective().exists());
        assert!(!HomSearch::new(&d2, &c2).injective().reflecting().exists());
        let c3 = structures::chain(3);
        assert_eq!(HomSearch::new(&c2, &c3).injective().reflecting().enumerate(10).len(), 3);
    }

    #[test]
    fn bounded_lattices_do_not_map_down() {
        assert!(!HomSearch::new(&structures::diamond(3), &structures::diamond(2)).exists());
        assert!(HomSearch::new(&structures::diamond(2), &structures::diamond(3)).exists());
    }

    #[test]
    fn domains_restrict_images() {
        let c2 = structures::chain(2);
        let only_top = vec![vec![vec![1], vec![1]]];
        assert_eq!(HomSearch::new(&c2, &c2).with_domains(only_top).first(), Some(vec![vec![1, 1]]));
        let swapped = vec![vec![vec![1], vec![0]]];
        assert!(HomSearch::new(&c2, &c2).with_domains(swapped).first().is_none());
    }
}
