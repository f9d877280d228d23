use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde_json::{json, Value};

use super::{enumerate_models, ModelUniverse};
use crate::error::{Error, Result};
use crate::homsearch::{local_retraction_check, HomSearch, RetractionRule};
use crate::semantics::{product, reduct, reduct_maps, Homomorphism, PartialStructure, SortMaps};
use crate::syntax::{TheoryFlag, TheoryMorphism};

/// Stated on every closure report: operators only see the bounded universe.
pub const SCOPE_NOTE: &str = "closure within the universe of models with every carrier of size <= k";

/// A set of universe representatives. Isomorphism-closed by construction,
/// since every model in the universe is its own canonical representative.
#[derive(Clone)]
pub struct ModelClass {
    pub universe: Arc<ModelUniverse>,
    pub members: Vec<bool>,
}

impl PartialEq for ModelClass {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.universe, &other.universe) && self.members == other.members
    }
}

impl Eq for ModelClass {}

impl fmt::Debug for ModelClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("ModelClass").field(&self.indices()).finish()
    }
}

impl ModelClass {
    pub fn empty(universe: &Arc<ModelUniverse>) -> Self {
        ModelClass { universe: universe.clone(), members: vec![false; universe.len()] }
    }

    pub fn full(universe: &Arc<ModelUniverse>) -> Self {
        ModelClass { universe: universe.clone(), members: vec![true; universe.len()] }
    }

    pub fn from_indices(universe: &Arc<ModelUniverse>, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut c = Self::empty(universe);
        indices.into_iter().for_each(|i| c.members[i] = true);
        c
    }

    /// The class of the representatives isomorphic to `models`.
    pub fn of_models(universe: &Arc<ModelUniverse>, models: &[PartialStructure]) -> Result<Self> {
        let idx = models
            .iter()
            .map(|m| {
                universe
                    .lookup(m)
                    .ok_or_else(|| Error::InvalidStructure(format!("`{}` is not a model in the universe", m.summary())))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_indices(universe, idx))
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members[i]
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..self.members.len()).filter(|&i| self.members[i]).collect()
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_subset(&self, other: &ModelClass) -> bool {
        self.members.iter().zip(&other.members).all(|(&a, &b)| !a || b)
    }

    pub fn union(&self, other: &ModelClass) -> ModelClass {
        let members = self.members.iter().zip(&other.members).map(|(&a, &b)| a || b).collect();
        ModelClass { universe: self.universe.clone(), members }
    }

    /// Members of `self` missing from `other`.
    pub fn minus(&self, other: &ModelClass) -> Vec<usize> {
        (0..self.members.len()).filter(|&i| self.members[i] && !other.members[i]).collect()
    }

    pub fn to_json(&self) -> Value {
        let members: Vec<Value> =
            self.indices().into_iter().map(|i| json!({ "index": i, "model": self.universe.describe(i) })).collect();
        json!({ "theory": self.universe.theory.name, "bound": self.universe.max_size, "members": members })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Operator {
    P,
    Sc,
    Hloc,
}

impl Operator {
    pub const ALL: [Operator; 3] = [Operator::P, Operator::Sc, Operator::Hloc];

    pub fn name(self) -> &'static str {
        match self {
            Operator::P => "P",
            Operator::Sc => "S_c",
            Operator::Hloc => "H_loc",
        }
    }
}

/// How `closure_Hloc` decides whether a reduct map is a local retraction.
#[derive(Clone, Debug)]
pub enum HlocRule {
    /// The source theory of `rho` carries an exact flag.
    Exact,
    /// Lift every map out of every probe; a necessary condition only.
    Probes(Vec<PartialStructure>),
}

/// A universe with a theory morphism `rho` into its theory, and the memo
/// tables the operators share.
pub struct ClosureContext {
    pub universe: Arc<ModelUniverse>,
    pub rho: TheoryMorphism,
    pub rule: HlocRule,
    reducts: Vec<Arc<PartialStructure>>,
    /// `[b][a]`: some closed mono `b → a`.
    closed_monos: OnceLock<Vec<Vec<bool>>>,
    /// `[a][b]`: some `a → b` whose reduct is a local retraction.
    retracts: OnceLock<Vec<Vec<Option<SortMaps>>>>,
    products: Mutex<HashMap<Vec<usize>, Option<usize>>>,
}

impl ClosureContext {
    /// `rho` is the identity of the universe's theory.
    pub fn new(universe: Arc<ModelUniverse>) -> Result<Self> {
        let rho = TheoryMorphism::identity(universe.theory.clone());
        Self::with_rho(universe, rho)
    }

    /// Probes, when needed, are the source-theory models of the same bound.
    pub fn with_rho(universe: Arc<ModelUniverse>, rho: TheoryMorphism) -> Result<Self> {
        let exact = rho.source.has_flag(TheoryFlag::ExactSurjective) || rho.source.has_flag(TheoryFlag::ExactConstants);
        if exact {
            return Self::build(universe, rho, HlocRule::Exact);
        }
        let probes = if *rho.source.signature == *universe.theory.signature && rho.source.axioms == universe.theory.axioms {
            universe.models.iter().map(|m| (**m).clone()).collect()
        } else {
            enumerate_models(&rho.source, universe.max_size)?.models.iter().map(|m| (**m).clone()).collect()
        };
        Self::build(universe, rho, HlocRule::Probes(probes))
    }

    pub fn with_probes(universe: Arc<ModelUniverse>, rho: TheoryMorphism, probes: Vec<PartialStructure>) -> Result<Self> {
        if let Some(g) = probes.iter().find(|g| *g.sig != *rho.source.signature) {
            return Err(Error::SignatureMismatch(format!("probe over `{}`", g.signature_name)));
        }
        Self::build(universe, rho, HlocRule::Probes(probes))
    }

    fn build(universe: Arc<ModelUniverse>, rho: TheoryMorphism, rule: HlocRule) -> Result<Self> {
        if *rho.target.signature != *universe.theory.signature {
            return Err(Error::SignatureMismatch(format!(
                "`{}` targets `{}`, the universe is over `{}`",
                rho.name, rho.target.name, universe.theory.name
            )));
        }
        let reducts = universe.models.iter().map(|m| reduct(&rho, m).map(Arc::new)).collect::<Result<_>>()?;
        Ok(ClosureContext {
            universe,
            rho,
            rule,
            reducts,
            closed_monos: OnceLock::new(),
            retracts: OnceLock::new(),
            products: Mutex::new(HashMap::new()),
        })
    }

    pub fn rule_name(&self) -> &'static str {
        match self.rule {
            HlocRule::Exact => "exact",
            HlocRule::Probes(_) => "probes",
        }
    }

    pub fn class(&self, indices: impl IntoIterator<Item = usize>) -> ModelClass {
        ModelClass::from_indices(&self.universe, indices)
    }

    pub fn apply(&self, op: Operator, e: &ModelClass) -> ModelClass {
        match op {
            Operator::P => self.closure_p(e),
            Operator::Sc => self.closure_sc(e),
            Operator::Hloc => self.closure_hloc(e),
        }
    }

    fn closed_mono_matrix(&self) -> &Vec<Vec<bool>> {
        self.closed_monos.get_or_init(|| {
            let ms = &self.universe.models;
            (0..ms.len())
                .into_par_iter()
                .map(|b| {
                    (0..ms.len()).map(|a| a == b || HomSearch::new(&ms[b], &ms[a]).injective().reflecting().exists()).collect()
                })
                .collect()
        })
    }

    fn is_local_retraction(&self, a: usize, maps: &[Vec<usize>], b: usize) -> bool {
        self.reduct_is_local_retraction(self.reducts[a].clone(), self.reducts[b].clone(), maps)
    }

    fn reduct_is_local_retraction(&self, a: Arc<PartialStructure>, b: Arc<PartialStructure>, maps: &[Vec<usize>]) -> bool {
        let p = Homomorphism::new_unchecked(a, b, reduct_maps(&self.rho, maps));
        let rule = match &self.rule {
            HlocRule::Exact => RetractionRule::Exact(&self.rho.source),
            HlocRule::Probes(probes) => RetractionRule::Probes(probes),
        };
        local_retraction_check(&p, rule).is_ok_and(|v| v.passed())
    }

    fn retract_matrix(&self) -> &Vec<Vec<Option<SortMaps>>> {
        self.retracts.get_or_init(|| {
            let ms = &self.universe.models;
            (0..ms.len())
                .into_par_iter()
                .map(|a| {
                    (0..ms.len())
                        .map(|b| {
                            if a == b {
                                return Some(ms[a].carriers.iter().map(|c| (0..c.len()).collect()).collect());
                            }
                            let mut found = None;
                            HomSearch::new(&ms[a], &ms[b]).for_each(|maps| {
                                if self.is_local_retraction(a, &maps, b) {
                                    found = Some(maps);
                                }
                                found.is_none()
                            });
                            found
                        })
                        .collect()
                })
                .collect()
        })
    }

    /// Whether the universe has a closed mono `b → a`.
    pub fn has_closed_mono(&self, b: usize, a: usize) -> bool {
        self.closed_mono_matrix()[b][a]
    }

    /// Whether some `a → b` reducts to a local retraction.
    pub fn has_local_retraction(&self, a: usize, b: usize) -> bool {
        self.retract_matrix()[a][b].is_some()
    }

    /// Universe index of the product of `factors` (a multiset, sorted), or
    /// `None` when it exceeds the bound.
    fn product_index(&self, factors: &[usize]) -> Option<usize> {
        if let Some(hit) = self.products.lock().expect("product memo").get(factors) {
            return *hit;
        }
        let u = &self.universe;
        let family: Vec<&PartialStructure> = factors.iter().map(|&i| &*u.models[i]).collect();
        let out = product(&u.theory.name, u.theory.signature.clone(), &family, u.max_size)
            .ok()
            .and_then(|(m, _)| u.lookup(&m));
        self.products.lock().expect("product memo").insert(factors.to_vec(), out);
        out
    }

    /// All products of members of `e` within the bound, each with one
    /// factor multiset (sorted) that yields it.
    ///
    /// Members with an empty carrier come first and are combined by a search
    /// over multisets, since they can shrink an oversized product back into
    /// the bound. A factor whose carriers all have at most one element is
    /// idempotent, and any other can occur at most `log2 k` times there. The
    /// remaining members never shrink a carrier, so the rest is a fixpoint
    /// under binary products that stays inside the universe.
    fn products_of(&self, e: &ModelClass) -> HashMap<usize, Vec<usize>> {
        let u = &self.universe;
        let k = u.max_size;
        let (zero, rest): (Vec<usize>, Vec<usize>) =
            e.indices().into_iter().partition(|&i| u.models[i].sizes().contains(&0));
        let log = (usize::BITS - 1 - k.max(1).leading_zeros()) as usize;
        let bounds: Vec<usize> =
            zero.iter().map(|&i| if u.models[i].sizes().iter().all(|&n| n <= 1) { 1 } else { log.max(1) }).collect();
        let nsorts = u.theory.sig().sorts.len();
        let mut out = HashMap::new();
        let mut chosen = Vec::new();
        self.product_dfs(&zero, &bounds, 0, vec![1; nsorts], &mut chosen, &mut out);
        let mut queue: Vec<usize> = out.keys().copied().collect();
        queue.sort_unstable();
        while let Some(x) = queue.pop() {
            for &m in &rest {
                let Some(y) = self.product_index(&sorted_pair(x, m)) else { continue };
                if !out.contains_key(&y) {
                    let mut factors = out[&x].clone();
                    factors.push(m);
                    factors.sort_unstable();
                    out.insert(y, factors);
                    queue.push(y);
                }
            }
        }
        out
    }

    fn product_dfs(
        &self,
        order: &[usize],
        bounds: &[usize],
        pos: usize,
        sizes: Vec<usize>,
        chosen: &mut Vec<usize>,
        out: &mut HashMap<usize, Vec<usize>>,
    ) {
        let k = self.universe.max_size;
        if pos == order.len() {
            if sizes.iter().all(|&n| n <= k) {
                let mut factors = chosen.clone();
                factors.sort_unstable();
                if let Some(i) = self.product_index(&factors) {
                    out.entry(i).or_insert(factors);
                }
            }
            return;
        }
        let m = &self.universe.models[order[pos]];
        let rescuable = |s: usize| order[pos + 1..].iter().any(|&j| self.universe.models[j].size(s) == 0);
        let mut cur = sizes;
        for c in 0..=bounds[pos] {
            if c > 0 {
                cur.iter_mut().enumerate().for_each(|(s, n)| *n = n.saturating_mul(m.size(s)));
                chosen.push(order[pos]);
            }
            if (0..cur.len()).any(|s| cur[s] > k && !rescuable(s)) {
                break;
            }
            self.product_dfs(order, bounds, pos + 1, cur.clone(), chosen, out);
        }
        let pushed = chosen.iter().rev().take_while(|&&i| i == order[pos]).count();
        chosen.truncate(chosen.len() - pushed);
    }

    /// Adds every product of members, the empty product included, iterated
    /// to a fixpoint.
    pub fn closure_p(&self, e: &ModelClass) -> ModelClass {
        let mut cur = e.clone();
        loop {
            let next = cur.union(&self.class(self.products_of(&cur).into_keys()));
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// Adds every representative with a closed mono into a member.
    pub fn closure_sc(&self, e: &ModelClass) -> ModelClass {
        let cm = self.closed_mono_matrix();
        let members = (0..e.members.len()).map(|b| e.members[b] || e.indices().iter().any(|&a| cm[b][a])).collect();
        ModelClass { universe: e.universe.clone(), members }
    }

    /// Adds every representative `b` with some member `a` and map `a → b`
    /// whose reduct along `rho` is a local retraction, iterated to a
    /// fixpoint.
    pub fn closure_hloc(&self, e: &ModelClass) -> ModelClass {
        let lr = self.retract_matrix();
        let mut cur = e.clone();
        loop {
            let idx = cur.indices();
            let members = (0..cur.members.len()).map(|b| cur.members[b] || idx.iter().any(|&a| lr[a][b].is_some())).collect();
            let next = ModelClass { universe: cur.universe.clone(), members };
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// `S_c(P(e))` within the universe, products of any size included.
    ///
    /// Applying [`closure_sc`](Self::closure_sc) to the bounded
    /// [`closure_p`](Self::closure_p) misses subobjects of products that are
    /// themselves too large. Instead, a representative `b` is kept when the
    /// maps from `b` into members jointly separate elements and jointly
    /// reflect definedness and relations, i.e. when `b` has a closed mono
    /// into the product of their codomains.
    pub fn closure_sc_p(&self, e: &ModelClass) -> ModelClass {
        let ms = &self.universe.models;
        let idx = e.indices();
        let members = (0..ms.len())
            .into_par_iter()
            .map(|b| {
                let mut homs = Vec::new();
                for &a in &idx {
                    HomSearch::new(&ms[b], &ms[a]).for_each(|maps| {
                        homs.push((a, maps));
                        true
                    });
                }
                jointly_closed(&ms[b], &homs, ms)
            })
            .collect();
        ModelClass { universe: e.universe.clone(), members }
    }

    /// Whether `x` is a local retract of a product of members of `e`,
    /// checked on an explicit witness that may exceed the bound.
    ///
    /// `x` is written as a product of members of `H_loc(e)`, each factor is
    /// traded for a member of `e` retracting onto it, and the product of
    /// those retractions is checked under the same rule. Witness products
    /// are capped at `cap` elements per sort. `false` means no witness was
    /// found this way, not that none exists.
    pub fn hloc_p_witness(&self, e: &ModelClass, x: usize, cap: usize) -> bool {
        let h = self.closure_hloc(e);
        let Some(factors) = self.products_of(&h).remove(&x) else { return false };
        let lr = self.retract_matrix();
        let ms = &self.universe.models;
        let mut sources = Vec::with_capacity(factors.len());
        for &b in &factors {
            let best = e
                .indices()
                .into_iter()
                .filter(|&a| lr[a][b].is_some())
                .min_by_key(|&a| (ms[a].sizes().iter().sum::<usize>(), a));
            match best {
                Some(a) => sources.push(a),
                None => return false,
            }
        }
        let sig = self.universe.theory.signature.clone();
        let name = &self.universe.theory.name;
        let src: Vec<&PartialStructure> = sources.iter().map(|&a| &*ms[a]).collect();
        let tgt: Vec<&PartialStructure> = factors.iter().map(|&b| &*ms[b]).collect();
        let (Ok((big, _)), Ok((small, _))) = (product(name, sig.clone(), &src, cap), product(name, sig, &tgt, cap)) else {
            return false;
        };
        let maps: SortMaps = (0..big.carriers.len())
            .map(|s| {
                (0..big.size(s))
                    .map(|mut i| {
                        let mut digits = vec![0; src.len()];
                        for (c, m) in src.iter().enumerate().rev() {
                            digits[c] = i % m.size(s);
                            i /= m.size(s);
                        }
                        digits.iter().enumerate().fold(0, |acc, (c, &d)| {
                            let (a, b) = (sources[c], factors[c]);
                            acc * ms[b].size(s) + lr[a][b].as_ref().expect("chosen source")[s][d]
                        })
                    })
                    .collect()
            })
            .collect();
        let (Ok(big), Ok(small)) = (reduct(&self.rho, &big), reduct(&self.rho, &small)) else { return false };
        self.reduct_is_local_retraction(Arc::new(big), Arc::new(small), &maps)
    }

    /// `H_loc(S_c(P(e)))`, then re-applies each operator to confirm a
    /// fixpoint.
    pub fn hsp_closure(&self, e: &ModelClass) -> HspReport {
        let sp = self.closure_sc_p(e);
        let result = self.closure_hloc(&sp);
        let escapes: Vec<(Operator, Vec<usize>)> = Operator::ALL
            .iter()
            .map(|&op| (op, self.apply(op, &result).minus(&result)))
            .filter(|(_, extra)| !extra.is_empty())
            .collect();
        HspReport { input: e.clone(), result, escapes, rule: self.rule_name() }
    }
}

fn sorted_pair(x: usize, y: usize) -> Vec<usize> {
    if x <= y {
        vec![x, y]
    } else {
        vec![y, x]
    }
}

/// Whether the maps `homs` out of `b` (into `models[a]`) form a closed mono
/// into the product of their codomains.
fn jointly_closed(b: &PartialStructure, homs: &[(usize, Vec<Vec<usize>>)], models: &[Arc<PartialStructure>]) -> bool {
    let separated = (0..b.carriers.len()).all(|s| {
        let n = b.size(s);
        (0..n).all(|x| (0..x).all(|y| homs.iter().any(|(_, h)| h[s][x] != h[s][y])))
    });
    if !separated {
        return false;
    }
    let image = |h: &[Vec<usize>], args: &[usize], tuple: &[usize]| -> Vec<usize> {
        tuple.iter().zip(args).map(|(&x, &s)| h[s][x]).collect()
    };
    let sizes = b.sizes();
    let funcs_ok = b.sig.functions.iter().enumerate().all(|(f, sym)| {
        (0..crate::semantics::tuple_count(&sizes, &sym.args)).all(|i| {
            b.funcs[f][i].is_some() || {
                let t = b.decode_tuple(&sym.args, i);
                homs.iter().any(|(a, h)| models[*a].func(f, &image(h, &sym.args, &t)).is_none())
            }
        })
    });
    funcs_ok
        && b.sig.relations.iter().enumerate().all(|(r, sym)| {
            (0..crate::semantics::tuple_count(&sizes, &sym.args)).all(|i| {
                b.rels[r][i] || {
                    let t = b.decode_tuple(&sym.args, i);
                    homs.iter().any(|(a, h)| !models[*a].rel(r, &image(h, &sym.args, &t)))
                }
            })
        })
}

#[derive(Clone, Debug)]
pub struct HspReport {
    pub input: ModelClass,
    pub result: ModelClass,
    /// Representatives each operator still adds to `result`.
    pub escapes: Vec<(Operator, Vec<usize>)>,
    pub rule: &'static str,
}

impl HspReport {
    pub fn is_fixpoint(&self) -> bool {
        self.escapes.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let escapes: Vec<Value> =
            self.escapes.iter().map(|(op, extra)| json!({ "operator": op.name(), "added": extra })).collect();
        json!({
            "input": self.input.to_json(),
            "result": self.result.to_json(),
            "fixpoint": self.is_fixpoint(),
            "escapes": escapes,
            "hloc_rule": self.rule,
            "scope": SCOPE_NOTE,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{structures, theories};

    fn ctx(t: Arc<crate::syntax::Theory>, k: usize) -> ClosureContext {
        ClosureContext::new(Arc::new(enumerate_models(&t, k).unwrap())).unwrap()
    }

    fn set_class(c: &ClosureContext, sizes: &[usize]) -> ModelClass {
        let set = theories::set();
        let ms: Vec<_> = sizes.iter().map(|&n| structures::bare_set(&set, n)).collect();
        ModelClass::of_models(&c.universe, &ms).unwrap()
    }

    #[test]
    fn products_in_set() {
        let c = ctx(theories::set(), 3);
        assert_eq!(c.closure_p(&set_class(&c, &[0])), set_class(&c, &[0, 1]));
        assert_eq!(c.closure_p(&ModelClass::empty(&c.universe)), set_class(&c, &[1]));
        let all = ModelClass::full(&c.universe);
        assert_eq!(c.closure_p(&all), all);
    }

    #[test]
    fn products_in_pos_reach_the_square() {
        let c = ctx(theories::pos(), 4);
        let e = ModelClass::of_models(&c.universe, &[structures::chain(2)]).unwrap();
        let p = c.closure_p(&e);
        let square = structures::chain(2);
        let (sq, _) = product("pos", square.sig.clone(), &[&square, &square], 4).unwrap();
        let expected = ModelClass::of_models(&c.universe, &[structures::chain(1), structures::chain(2), sq]).unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn closed_subobjects_of_a_chain() {
        let c = ctx(theories::pos(), 2);
        let e = ModelClass::of_models(&c.universe, &[structures::chain(2)]).unwrap();
        let expected = ModelClass::of_models(
            &c.universe,
            &[structures::chain(0), structures::chain(1), structures::chain(2)],
        )
        .unwrap();
        assert_eq!(c.closure_sc(&e), expected);
        let empty = ModelClass::of_models(&c.universe, &[structures::chain(0)]).unwrap();
        assert_eq!(c.closure_sc(&empty), empty);
    }

    #[test]
    fn retracts_of_sets_are_surjective_images() {
        let c = ctx(theories::set(), 3);
        assert!(matches!(c.rule, HlocRule::Exact));
        assert_eq!(c.closure_hloc(&set_class(&c, &[2])), set_class(&c, &[1, 2]));
        assert_eq!(c.closure_hloc(&set_class(&c, &[0])), set_class(&c, &[0]));
    }

    #[test]
    fn constants_are_not_merged() {
        let t = theories::remark_constants(2);
        let c = ctx(t.clone(), 2);
        let two = structures::constants_model(&t, &[0, 1], 2);
        let one = structures::constants_model(&t, &[0, 0], 1);
        let e = ModelClass::of_models(&c.universe, &[two]).unwrap();
        let j = c.universe.lookup(&one).unwrap();
        assert!(!c.closure_hloc(&e).contains(j));
    }

    #[test]
    fn subobjects_of_large_products_are_kept() {
        let c = ctx(theories::urel(), 2);
        // ({a, b}, p = {b}): its closed point {a} times itself is the
        // two-point model with p empty, a closed subobject of the 4-point square.
        let e = c.class([4]);
        let composite = c.closure_sc_p(&e);
        assert!(composite.contains(3));
        assert!(!c.closure_sc(&c.closure_p(&e)).contains(3));
        assert!(c.closure_p(&c.closure_sc(&e)).is_subset(&composite));
        assert!(c.closure_sc(&c.closure_p(&e)).is_subset(&composite));
    }

    #[test]
    fn hsp_of_the_empty_set() {
        let c = ctx(theories::set(), 3);
        let r = c.hsp_closure(&set_class(&c, &[0]));
        assert!(r.is_fixpoint());
        assert_eq!(r.result, set_class(&c, &[0, 1]));
        let all = ModelClass::full(&c.universe);
        assert_eq!(c.hsp_closure(&all).result, all);
    }
}
