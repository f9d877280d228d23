//! Bounded model enumeration up to isomorphism.
//!
//! For each vector of carrier sizes the function and relation tables are
//! filled cell by cell. After every cell the axioms mentioning its symbol are
//! evaluated in three-valued logic over the cells known so far, and the
//! branch is cut as soon as some assignment makes a premise true and the
//! conclusion false. Complete models are deduplicated by their canonical key,
//! the lexicographically least encoding over all per-sort relabelings.

use std::collections::HashMap;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::semantics::{is_model, PartialStructure};
use crate::syntax::{Formula, HornSequent, Term, Theory};

/// Default cap on search nodes per enumeration.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// Largest per-sort bound accepted by [`enumerate_models`].
pub const MAX_BOUND: usize = 6;

/// All models of a theory with every carrier of size ≤ `max_size`, one per
/// isomorphism class.
#[derive(Clone, Debug)]
pub struct ModelUniverse {
    pub theory: Arc<Theory>,
    pub max_size: usize,
    /// Canonical representatives ordered by total size, size vector, then key.
    pub models: Vec<Arc<PartialStructure>>,
    pub keys: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl ModelUniverse {
    fn from_models(theory: Arc<Theory>, max_size: usize, mut found: Vec<(Vec<u32>, PartialStructure)>) -> Self {
        found.sort_by(|(ka, a), (kb, b)| {
            (a.total_size(), a.sizes(), ka).cmp(&(b.total_size(), b.sizes(), kb))
        });
        let index = found.iter().enumerate().map(|(i, (k, _))| (k.clone(), i)).collect();
        let (keys, models) = found.into_iter().map(|(k, m)| (k, Arc::new(m))).unzip();
        ModelUniverse { theory, max_size, models, keys, index }
    }

    pub fn len(&self) -> usize {
        self.models.len()
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }

    /// Index of the representative isomorphic to `m`, if `m` is within the
    /// bound and a model.
    pub fn lookup(&self, m: &PartialStructure) -> Option<usize> {
        if m.carriers.iter().any(|c| c.len() > self.max_size) {
            return None;
        }
        self.index.get(&canonical_form(m).0).copied()
    }

    /// Short description of model `i`.
    pub fn describe(&self, i: usize) -> String {
        format!("#{i}:{}", self.models[i].summary())
    }
}

fn encode(m: &PartialStructure, perms: &[Vec<usize>], inverse: &[Vec<usize>]) -> Vec<u32> {
    let sizes = m.sizes();
    let mut out: Vec<u32> = sizes.iter().map(|&n| n as u32).collect();
    let mut old = Vec::new();
    for (f, sym) in m.sig.functions.iter().enumerate() {
        let count = crate::semantics::tuple_count(&sizes, &sym.args);
        for i in 0..count {
            let new = m.decode_tuple(&sym.args, i);
            old.clear();
            old.extend(new.iter().zip(&sym.args).map(|(&a, &s)| inverse[s][a]));
            out.push(match m.func(f, &old) {
                None => 0,
                Some(v) => perms[sym.result][v] as u32 + 1,
            });
        }
    }
    for (r, sym) in m.sig.relations.iter().enumerate() {
        let count = crate::semantics::tuple_count(&sizes, &sym.args);
        for i in 0..count {
            let new = m.decode_tuple(&sym.args, i);
            old.clear();
            old.extend(new.iter().zip(&sym.args).map(|(&a, &s)| inverse[s][a]));
            out.push(u32::from(m.rel(r, &old)));
        }
    }
    out
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("a larger element exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// The canonical key of `m` and the relabeling (old → new, per sort) that
/// attains it.
pub fn canonical_form(m: &PartialStructure) -> (Vec<u32>, Vec<Vec<usize>>) {
    let mut perms: Vec<Vec<usize>> = m.carriers.iter().map(|c| (0..c.len()).collect()).collect();
    let mut best: Option<(Vec<u32>, Vec<Vec<usize>>)> = None;
    loop {
        let inverse: Vec<Vec<usize>> = perms
            .iter()
            .map(|p| {
                let mut inv = vec![0; p.len()];
                p.iter().enumerate().for_each(|(a, &b)| inv[b] = a);
                inv
            })
            .collect();
        let key = encode(m, &perms, &inverse);
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            best = Some((key, perms.clone()));
        }
        // Odometer over the per-sort permutations.
        let mut s = 0;
        loop {
            if s == perms.len() {
                return best.expect("at least one labeling");
            }
            if next_permutation(&mut perms[s]) {
                break;
            }
            perms[s].sort_unstable();
            s += 1;
        }
    }
}

pub fn canonical_key(m: &PartialStructure) -> Vec<u32> {
    canonical_form(m).0
}

/// `m` relabelled into canonical order with carriers `0, 1, …`.
pub fn canonicalize(m: &PartialStructure) -> (Vec<u32>, PartialStructure) {
    let (key, perms) = canonical_form(m);
    let mut out = m.relabel(&perms);
    out.carriers = out.carriers.iter().map(|c| (0..c.len()).map(|i| i.to_string()).collect()).collect();
    (key, out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Val {
    Elem(usize),
    Undef,
    Unknown,
}

/// Tables under construction: `known` marks the assigned cells.
struct Partial<'a> {
    m: PartialStructure,
    fknown: Vec<Vec<bool>>,
    rknown: Vec<Vec<bool>>,
    theory: &'a Theory,
}

impl Partial<'_> {
    fn term(&self, t: &Term, env: &[usize]) -> Val {
        match t {
            Term::Var(i) => Val::Elem(env[*i]),
            Term::App(f, args) => {
                let mut tuple = Vec::with_capacity(args.len());
                let mut unknown = false;
                for a in args {
                    match self.term(a, env) {
                        Val::Undef => return Val::Undef,
                        Val::Unknown => unknown = true,
                        Val::Elem(v) => tuple.push(v),
                    }
                }
                if unknown {
                    return Val::Unknown;
                }
                let idx = self.m.tuple_index(&self.m.sig.functions[*f].args, &tuple);
                if !self.fknown[*f][idx] {
                    return Val::Unknown;
                }
                self.m.funcs[*f][idx].map_or(Val::Undef, Val::Elem)
            }
        }
    }

    fn formula(&self, phi: &Formula, env: &[usize]) -> Option<bool> {
        match phi {
            Formula::Top => Some(true),
            Formula::Eq(a, b) => match (self.term(a, env), self.term(b, env)) {
                (Val::Undef, _) | (_, Val::Undef) => Some(false),
                (Val::Elem(x), Val::Elem(y)) => Some(x == y),
                _ => None,
            },
            Formula::Rel(r, args) => {
                let mut tuple = Vec::with_capacity(args.len());
                let mut unknown = false;
                for a in args {
                    match self.term(a, env) {
                        Val::Undef => return Some(false),
                        Val::Unknown => unknown = true,
                        Val::Elem(v) => tuple.push(v),
                    }
                }
                if unknown {
                    return None;
                }
                let idx = self.m.tuple_index(&self.m.sig.relations[*r].args, &tuple);
                self.rknown[*r][idx].then(|| self.m.rels[*r][idx])
            }
            Formula::And(a, b) => match (self.formula(a, env), self.formula(b, env)) {
                (Some(false), _) | (_, Some(false)) => Some(false),
                (Some(true), Some(true)) => Some(true),
                _ => None,
            },
        }
    }

    /// Whether some assignment already refutes `seq`.
    fn refuted(&self, seq: &HornSequent) -> bool {
        let sizes: Vec<usize> = seq.context.iter().map(|v| self.m.size(v.sort)).collect();
        if sizes.contains(&0) {
            return false;
        }
        let mut env = vec![0; sizes.len()];
        loop {
            if self.formula(&seq.premise, &env) == Some(true) && self.formula(&seq.conclusion, &env) == Some(false) {
                return true;
            }
            let mut i = env.len();
            loop {
                if i == 0 {
                    return false;
                }
                i -= 1;
                env[i] += 1;
                if env[i] < sizes[i] {
                    break;
                }
                env[i] = 0;
            }
        }
    }
}

#[derive(Clone, Copy)]
enum Cell {
    Func(usize, usize),
    Rel(usize, usize),
}

struct Enumerator<'a> {
    partial: Partial<'a>,
    cells: Vec<Cell>,
    /// Axioms to re-check after assigning a cell of each function / relation.
    func_watch: Vec<Vec<usize>>,
    rel_watch: Vec<Vec<usize>>,
    nodes: u64,
    budget: u64,
    found: HashMap<Vec<u32>, PartialStructure>,
}

impl Enumerator<'_> {
    fn refuted_any(&self, axioms: &[usize]) -> bool {
        axioms.iter().any(|&a| self.partial.refuted(&self.partial.theory.axioms[a]))
    }

    fn go(&mut self, i: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Budget(format!("more than {} search nodes", self.budget)));
        }
        if i == self.cells.len() {
            let m = &self.partial.m;
            if is_model(m, self.partial.theory)? {
                let (key, canon) = canonicalize(m);
                self.found.entry(key).or_insert(canon);
            }
            return Ok(());
        }
        match self.cells[i] {
            Cell::Func(f, idx) => {
                let result = self.partial.m.sig.functions[f].result;
                let n = self.partial.m.size(result);
                self.partial.fknown[f][idx] = true;
                for v in std::iter::once(None).chain((0..n).map(Some)) {
                    self.partial.m.funcs[f][idx] = v;
                    if !self.refuted_any(&self.func_watch[f]) {
                        self.go(i + 1)?;
                    }
                }
                self.partial.m.funcs[f][idx] = None;
                self.partial.fknown[f][idx] = false;
            }
            Cell::Rel(r, idx) => {
                self.partial.rknown[r][idx] = true;
                for v in [false, true] {
                    self.partial.m.rels[r][idx] = v;
                    if !self.refuted_any(&self.rel_watch[r]) {
                        self.go(i + 1)?;
                    }
                }
                self.partial.m.rels[r][idx] = false;
                self.partial.rknown[r][idx] = false;
            }
        }
        Ok(())
    }
}

fn size_vectors(nsorts: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..nsorts {
        out = out.into_iter().flat_map(|v| (0..=k).map(move |n| [v.clone(), vec![n]].concat())).collect();
    }
    out
}

fn enumerate_sizes(theory: &Theory, sizes: &[usize], budget: u64) -> Result<Vec<(Vec<u32>, PartialStructure)>> {
    let sig = theory.sig();
    let m = PartialStructure::empty(&theory.name, theory.signature.clone(), sizes);
    let mut cells = Vec::new();
    let mut order: Vec<usize> = (0..sig.functions.len()).collect();
    order.sort_by_key(|&f| sig.functions[f].args.len());
    for f in order {
        cells.extend((0..m.funcs[f].len()).map(|i| Cell::Func(f, i)));
    }
    for r in 0..sig.relations.len() {
        cells.extend((0..m.rels[r].len()).map(|i| Cell::Rel(r, i)));
    }
    let mut func_watch = vec![Vec::new(); sig.functions.len()];
    let mut rel_watch = vec![Vec::new(); sig.relations.len()];
    for (a, ax) in theory.axioms.iter().enumerate() {
        let (fs, rs) = ax.symbols();
        fs.into_iter().for_each(|f| func_watch[f].push(a));
        rs.into_iter().for_each(|r| rel_watch[r].push(a));
    }
    let fknown = m.funcs.iter().map(|t| vec![false; t.len()]).collect();
    let rknown = m.rels.iter().map(|t| vec![false; t.len()]).collect();
    let mut e = Enumerator {
        partial: Partial { m, fknown, rknown, theory },
        cells,
        func_watch,
        rel_watch,
        nodes: 0,
        budget,
        found: HashMap::new(),
    };
    let all: Vec<usize> = (0..theory.axioms.len()).collect();
    if !e.refuted_any(&all) {
        e.go(0)?;
    }
    Ok(e.found.into_iter().collect())
}

/// Every model of `theory` with all carriers of size ≤ `k`, up to
/// isomorphism. Size vectors are enumerated in parallel; `budget` caps the
/// search nodes of each.
pub fn enumerate_models_with_budget(theory: &Arc<Theory>, k: usize, budget: u64) -> Result<ModelUniverse> {
    if k > MAX_BOUND {
        return Err(Error::SizeBound(format!("carrier bound {k} exceeds {MAX_BOUND}")));
    }
    let shards = size_vectors(theory.sig().sorts.len(), k);
    let found: Vec<Vec<(Vec<u32>, PartialStructure)>> =
        shards.par_iter().map(|sizes| enumerate_sizes(theory, sizes, budget)).collect::<Result<_>>()?;
    Ok(ModelUniverse::from_models(theory.clone(), k, found.into_iter().flatten().collect()))
}

pub fn enumerate_models(theory: &Arc<Theory>, k: usize) -> Result<ModelUniverse> {
    enumerate_models_with_budget(theory, k, DEFAULT_BUDGET)
}

/// Content address of a universe: the printed theory and the bound.
pub fn universe_cache_key(theory: &Theory, k: usize) -> String {
    let mut h = Sha256::new();
    h.update(b"phl-universe-v1\n");
    h.update(theory.to_string().as_bytes());
    h.update(format!("\nk={k}\n").as_bytes());
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn cache_path(dir: &Path, theory: &Theory, k: usize) -> PathBuf {
    dir.join(format!("{}.jsonl", universe_cache_key(theory, k)))
}

/// Like [`enumerate_models`], reading and writing JSON-lines cache files
/// under `dir`.
pub fn enumerate_models_cached(theory: &Arc<Theory>, k: usize, dir: &Path) -> Result<ModelUniverse> {
    let path = cache_path(dir, theory, k);
    if let Ok(text) = fs::read_to_string(&path) {
        let sig = theory.signature.clone();
        let found = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|line| {
                let v: serde_json::Value = serde_json::from_str(line)?;
                let m = PartialStructure::from_json(&v, |_| Some(sig.clone()))?;
                Ok((canonical_key(&m), m))
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(ModelUniverse::from_models(theory.clone(), k, found));
    }
    let u = enumerate_models(theory, k)?;
    fs::create_dir_all(dir)?;
    let tmp = path.with_extension("jsonl.tmp");
    let mut f = fs::File::create(&tmp)?;
    for m in &u.models {
        writeln!(f, "{}", m.to_json())?;
    }
    f.sync_all()?;
    fs::rename(&tmp, &path)?;
    Ok(u)
}
