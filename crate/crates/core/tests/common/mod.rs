//! Independent oracles for the integration tests. The oracles do not call
//! the enumerator, the homomorphism search or the component classifier; they
//! use only the table accessors of `PartialStructure` and the sequent checker.
//! [`props`] draws its instances from enumerated universes.

#![allow(dead_code)]

pub mod props;

use std::collections::BTreeSet;
use std::sync::Arc;

use phl::semantics::{is_model, sequent_valid, PartialStructure};
use phl::sigma::FiniteGroup;
use phl::syntax::Theory;

/// Every model with carriers of size ≤ `k`, one per isomorphism class.
///
/// Tables are filled one symbol at a time in every possible way (relations
/// first, then functions by arity); each axiom is checked as soon as every
/// symbol it mentions has a table.
pub fn naive_models(t: &Theory, k: usize) -> Vec<PartialStructure> {
    let sig = t.signature.clone();
    let mut order: Vec<Sym> = (0..sig.relations.len()).map(Sym::Rel).collect();
    let mut funcs: Vec<usize> = (0..sig.functions.len()).collect();
    funcs.sort_by_key(|&f| sig.functions[f].args.len());
    order.extend(funcs.into_iter().map(Sym::Func));
    let filled = |n: usize| -> (BTreeSet<usize>, BTreeSet<usize>) {
        let mut fs = BTreeSet::new();
        let mut rs = BTreeSet::new();
        for s in &order[..n] {
            match *s {
                Sym::Func(f) => fs.insert(f),
                Sym::Rel(r) => rs.insert(r),
            };
        }
        (fs, rs)
    };
    // ready[n]: axioms whose symbols all have tables once `n` symbols are filled
    let mut ready = vec![Vec::new(); order.len() + 1];
    for (i, ax) in t.axioms.iter().enumerate() {
        let (fs, rs) = ax.symbols();
        let n = (0..=order.len())
            .find(|&n| {
                let (have_f, have_r) = filled(n);
                fs.is_subset(&have_f) && rs.is_subset(&have_r)
            })
            .expect("axiom over the signature");
        ready[n].push(i);
    }
    let mut reps: Vec<PartialStructure> = Vec::new();
    for sizes in all_vectors(sig.sorts.len(), k + 1) {
        let blank = PartialStructure::empty(t.name.clone(), sig.clone(), &sizes);
        let mut found = Vec::new();
        fill(t, &order, &ready, 0, blank, &mut found);
        for m in found {
            assert!(is_model(&m, t).expect("well-formed theory"));
            if !reps.iter().any(|r| isomorphic(r, &m)) {
                reps.push(m);
            }
        }
    }
    reps
}

#[derive(Clone, Copy)]
enum Sym {
    Func(usize),
    Rel(usize),
}

fn fill(t: &Theory, order: &[Sym], ready: &[Vec<usize>], n: usize, m: PartialStructure, out: &mut Vec<PartialStructure>) {
    if !ready[n].iter().all(|&i| sequent_valid(&m, &t.axioms[i])) {
        return;
    }
    let Some(&sym) = order.get(n) else {
        out.push(m);
        return;
    };
    let radices = match sym {
        Sym::Func(f) => vec![m.size(m.sig.functions[f].result) + 1; m.funcs[f].len()],
        Sym::Rel(r) => vec![2; m.rels[r].len()],
    };
    let visit = |digits: &[usize]| {
        let mut next = m.clone();
        match sym {
            Sym::Func(f) => next.funcs[f] = digits.iter().map(|d| d.checked_sub(1)).collect(),
            Sym::Rel(r) => next.rels[r] = digits.iter().map(|&d| d == 1).collect(),
        }
        fill(t, order, ready, n + 1, next, out);
    };
    for_each_digits(&radices, visit);
}

/// Calls `visit` on every digit vector below `radices`, last digit fastest.
pub fn for_each_digits(radices: &[usize], mut visit: impl FnMut(&[usize])) {
    if radices.contains(&0) {
        return;
    }
    let mut digits = vec![0; radices.len()];
    loop {
        visit(&digits);
        let mut i = radices.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < radices[i] {
                break;
            }
            digits[i] = 0;
        }
    }
}

fn all_vectors(len: usize, radix: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_digits(&vec![radix; len], |d| out.push(d.to_vec()));
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn image(maps: &[Vec<usize>], args: &[usize], tuple: &[usize]) -> Vec<usize> {
    tuple.iter().zip(args).map(|(&a, &s)| maps[s][a]).collect()
}

/// Whether the per-sort maps send defined values to matching defined values
/// and true relation tuples to true ones.
pub fn preserves(maps: &[Vec<usize>], a: &PartialStructure, b: &PartialStructure) -> bool {
    let sig = &a.sig;
    sig.functions.iter().enumerate().all(|(f, sym)| {
        (0..a.funcs[f].len()).all(|i| match a.funcs[f][i] {
            None => true,
            Some(v) => {
                let t = a.decode_tuple(&sym.args, i);
                b.func(f, &image(maps, &sym.args, &t)) == Some(maps[sym.result][v])
            }
        })
    }) && sig.relations.iter().enumerate().all(|(r, sym)| {
        (0..a.rels[r].len()).all(|i| !a.rels[r][i] || b.rel(r, &image(maps, &sym.args, &a.decode_tuple(&sym.args, i))))
    })
}

/// Explicit isomorphism search over all per-sort permutations.
pub fn isomorphic(a: &PartialStructure, b: &PartialStructure) -> bool {
    if a.sizes() != b.sizes() {
        return false;
    }
    let per_sort: Vec<Vec<Vec<usize>>> = a.sizes().iter().map(|&n| permutations(n)).collect();
    let radices: Vec<usize> = per_sort.iter().map(Vec::len).collect();
    let mut found = false;
    for_each_digits(&radices, |choice| {
        if found {
            return;
        }
        let maps: Vec<Vec<usize>> = choice.iter().enumerate().map(|(s, &c)| per_sort[s][c].clone()).collect();
        let inverse: Vec<Vec<usize>> = maps
            .iter()
            .map(|p| {
                let mut inv = vec![0; p.len()];
                p.iter().enumerate().for_each(|(x, &y)| inv[y] = x);
                inv
            })
            .collect();
        found = preserves(&maps, a, b) && preserves(&inverse, b, a);
    });
    found
}

/// Every homomorphism `a → b`, by trying every map of carriers.
pub fn naive_homs(a: &PartialStructure, b: &PartialStructure) -> Vec<Vec<Vec<usize>>> {
    let mut radices = Vec::new();
    for s in 0..a.carriers.len() {
        radices.extend(std::iter::repeat_n(b.size(s), a.size(s)));
    }
    let mut out = Vec::new();
    let split = |digits: &[usize]| -> Vec<Vec<usize>> {
        let mut maps = Vec::new();
        let mut at = 0;
        for s in 0..a.carriers.len() {
            maps.push(digits[at..at + a.size(s)].to_vec());
            at += a.size(s);
        }
        maps
    };
    for_each_digits(&radices, |d| {
        let maps = split(d);
        if preserves(&maps, a, b) {
            out.push(maps);
        }
    });
    out
}

pub fn naive_hom_exists(a: &PartialStructure, b: &PartialStructure) -> bool {
    !naive_homs(a, b).is_empty()
}

/// Strongly connected components of the hom-existence relation, via the
/// reflexive-transitive closure of the naive hom matrix.
pub fn naive_component_count(family: &[PartialStructure]) -> usize {
    let n = family.len();
    let mut reach: Vec<Vec<bool>> =
        (0..n).map(|i| (0..n).map(|j| i == j || naive_hom_exists(&family[i], &family[j])).collect()).collect();
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                if reach[i][m] && reach[m][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    (0..n).filter(|&i| (0..i).all(|j| !(reach[i][j] && reach[j][i]))).count()
}

/// A section `s` of `p : a → b`, i.e. `p ∘ s = id`, by exhaustive search.
pub fn naive_section(p: &[Vec<usize>], a: &PartialStructure, b: &PartialStructure) -> Option<Vec<Vec<usize>>> {
    naive_homs(b, a).into_iter().find(|s| s.iter().enumerate().all(|(sort, m)| m.iter().enumerate().all(|(y, &x)| p[sort][x] == y)))
}

pub fn is_surjective(p: &[Vec<usize>], b: &PartialStructure) -> bool {
    (0..b.carriers.len()).all(|s| (0..b.size(s)).all(|y| p[s].contains(&y)))
}

/// Subgroups counted as the subsets containing the unit and closed under
/// multiplication.
pub fn brute_force_subgroup_count(g: &FiniteGroup) -> usize {
    let n = g.order();
    (0u32..1 << n)
        .filter(|mask| {
            let has = |x: usize| mask >> x & 1 == 1;
            has(g.identity()) && (0..n).all(|x| (0..n).all(|y| !has(x) || !has(y) || has(g.mul(x, y))))
        })
        .count()
}

/// Bell numbers from the Bell triangle.
pub fn bell(n: usize) -> usize {
    let mut row = vec![1usize];
    for _ in 0..n {
        let mut next = vec![*row.last().expect("nonempty row")];
        for &x in &row {
            next.push(next.last().expect("nonempty row") + x);
        }
        row = next;
    }
    row[0]
}

pub fn arcs(models: &[Arc<PartialStructure>]) -> Vec<PartialStructure> {
    models.iter().map(|m| (**m).clone()).collect()
}
