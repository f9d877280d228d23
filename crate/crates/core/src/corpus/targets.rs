//! Reproduction targets: named computations with expected results.

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::{chains, morphisms, structures, theories};
use crate::closure::{
    check_theory_morphism_bounded, definable_class, enumerate_models, operator_law_report, parse_extra, ClosureContext,
    ModelClass, MorphismVerdict, Operator, SCOPE_NOTE,
};
use crate::error::{Error, Result};
use crate::homsearch::{hom_exists, local_retraction_check, RetractionRule};
use crate::semantics::{chain_colimit, ColimitOutcome, Homomorphism, PartialStructure};
use crate::sigma::{
    acc_probe, classify_components, gset_sigma_check, subgroup_category, subgroups, verify_fam_theorem, FiniteGroup,
    FinitePoset, HomQuiver, DEFAULT_GROUP_BOUND,
};
use crate::syntax::Theory;

/// Version tag of the JSON report layout.
pub const REPORT_SCHEMA: &str = "phl-repro/1";

pub const DEFAULT_SEED: u64 = 20_240_601;

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Stated in the source material.
    Paper,
    /// Immediate from the definitions.
    Trivial,
    /// Worked out independently of the code under test.
    Derived,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Paper => "paper",
            Provenance::Trivial => "trivial",
            Provenance::Derived => "derived",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    /// Seed for sampled closure classes.
    pub seed: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { seed: DEFAULT_SEED }
    }
}

type Runner = Box<dyn Fn(&RunOptions) -> Result<Value> + Send + Sync>;

pub struct ReproductionTarget {
    pub name: String,
    pub tags: Vec<&'static str>,
    pub provenance: Provenance,
    /// What the expected value reproduces, and why the bound suffices.
    pub note: String,
    pub bound: String,
    pub expected: Value,
    run: Runner,
}

impl ReproductionTarget {
    fn new(
        name: impl Into<String>,
        tags: &[&'static str],
        provenance: Provenance,
        note: impl Into<String>,
        bound: impl Into<String>,
        expected: Value,
        run: impl Fn(&RunOptions) -> Result<Value> + Send + Sync + 'static,
    ) -> Self {
        ReproductionTarget {
            name: name.into(),
            tags: tags.to_vec(),
            provenance,
            note: note.into(),
            bound: bound.into(),
            expected,
            run: Box::new(run),
        }
    }

    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.contains(&tag)
    }

    pub fn run(&self, opts: &RunOptions) -> ReproductionResult {
        let start = Instant::now();
        let outcome = (self.run)(opts);
        let runtime_ms = start.elapsed().as_millis() as u64;
        let (computed, verdict) = match outcome {
            Ok(v) => {
                let verdict = if v == self.expected { Verdict::Match } else { Verdict::Mismatch };
                (v, verdict)
            }
            Err(e) => (json!({ "error": e.to_string() }), Verdict::Error),
        };
        ReproductionResult {
            target: self.name.clone(),
            computed,
            expected: self.expected.clone(),
            provenance: self.provenance,
            bound: self.bound.clone(),
            note: self.note.clone(),
            runtime_ms,
            verdict,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Match,
    Mismatch,
    Error,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Match => "match",
            Verdict::Mismatch => "mismatch",
            Verdict::Error => "error",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReproductionResult {
    pub target: String,
    pub computed: Value,
    pub expected: Value,
    pub provenance: Provenance,
    pub bound: String,
    pub note: String,
    pub runtime_ms: u64,
    pub verdict: Verdict,
}

impl ReproductionResult {
    pub fn matched(&self) -> bool {
        self.verdict == Verdict::Match
    }

    pub fn to_json(&self) -> Value {
        json!({
            "target": self.target,
            "computed": self.computed,
            "expected": self.expected,
            "provenance": self.provenance.as_str(),
            "bound": self.bound,
            "note": self.note,
            "runtime_ms": self.runtime_ms,
            "verdict": self.verdict.as_str(),
        })
    }
}

fn components(theory: &Arc<Theory>, k: usize) -> Result<Value> {
    let u = enumerate_models(theory, k)?;
    let family: Vec<PartialStructure> = u.models.iter().map(|m| (**m).clone()).collect();
    Ok(json!({ "components": classify_components(&family).len() }))
}

/// A component count among all models with carriers of size ≤ `k`.
fn count_target(
    name: &str,
    theory: impl Fn() -> Arc<Theory> + Send + Sync + 'static,
    k: usize,
    expected: usize,
    provenance: Provenance,
    note: &str,
) -> ReproductionTarget {
    ReproductionTarget::new(
        name,
        &["table-a", "sigma"],
        provenance,
        format!("{note}; every component has a representative with carriers of size <= {k}"),
        format!("k={k}"),
        json!({ "components": expected }),
        move |_| components(&theory(), k),
    )
}

/// Backward homomorphisms `stage(n) → stage(m)` for `m < n`, over `pairs`.
fn backward_homs(stage: impl Fn(usize) -> PartialStructure, pairs: &[(usize, usize)]) -> Value {
    let found: Vec<Value> =
        pairs.iter().filter(|&&(n, m)| hom_exists(&stage(n), &stage(m))).map(|&(n, m)| json!([n, m])).collect();
    json!({ "pairs_checked": pairs.len(), "homs_found": found })
}

fn pairs(lo: usize, hi: usize) -> Vec<(usize, usize)> {
    (lo..=hi).flat_map(|n| (lo..n).map(move |m| (n, m))).collect()
}

fn ordinal_components(k: usize) -> Result<Value> {
    let family: Vec<PartialStructure> = (0..=k + 1).map(|a| structures::u_functor(k, a)).collect();
    let sigma = classify_components(&family);
    Ok(json!({ "components": sigma.len(), "total": sigma.order.is_total() }))
}

fn remark_locret_escape() -> Result<Value> {
    let k = 2;
    let t = theories::remark_locret(k);
    let u = Arc::new(enumerate_models(&t, 2)?);
    let extra = parse_extra(&u, "[x:*] u_0(x) = e & u_1(x) = e & u_2(x) = e |- x = e;")?;
    let e = definable_class(&u, &extra);
    let ctx = ClosureContext::new(u.clone())?;
    let closed: Vec<&str> = Operator::ALL.iter().filter(|&&op| ctx.apply(op, &e) == e).map(|op| op.name()).collect();
    let hsp = ctx.hsp_closure(&e);
    let ColimitOutcome::Stable { index, structure } = chain_colimit(&chains::remark_locret(k), k + 2)? else {
        return Err(Error::IllFormed("the remark chain has no stable colimit".into()));
    };
    let colimit_in_class = u.lookup(&structure).map(|i| e.contains(i));
    Ok(json!({
        "class_size": e.len(),
        "closed_under": closed,
        "hsp_equals_class": hsp.result == e,
        "hsp_fixpoint": hsp.is_fixpoint(),
        "colimit_stable_from": index,
        "colimit_in_class": colimit_in_class,
    }))
}

fn remark_constants_merge() -> Result<Value> {
    let t = theories::remark_constants(3);
    let a = Arc::new(structures::constants_model(&t, &[0, 1, 2], 3));
    let b = Arc::new(structures::constants_model(&t, &[0, 0, 1], 2));
    let p = Homomorphism::new(a.clone(), b.clone(), vec![vec![0, 0, 1]])?;
    let verdict = local_retraction_check(&p, RetractionRule::Exact(&t))?;
    let u = Arc::new(enumerate_models(&t, 3)?);
    let ctx = ClosureContext::new(u.clone())?;
    let e = ModelClass::of_models(&u, &[(*a).clone()])?;
    let image = u.lookup(&b).ok_or_else(|| Error::InvalidStructure("image is not a model".into()))?;
    Ok(json!({
        "surjective": p.is_surjective(),
        "verdict": verdict.to_json()["verdict"],
        "hloc_adds_image": ctx.closure_hloc(&e).contains(image),
    }))
}

fn law_target(name: &str, theory: fn() -> Arc<Theory>, k: usize) -> ReproductionTarget {
    ReproductionTarget::new(
        name,
        &["closure"],
        Provenance::Paper,
        format!("idempotence and interchange laws of P, S_c, H_loc on sampled classes; {SCOPE_NOTE}"),
        format!("k={k}, 10 random classes"),
        json!({ "violations": 0 }),
        move |opts| {
            let ctx = ClosureContext::new(Arc::new(enumerate_models(&theory(), k)?))?;
            let r = operator_law_report(&ctx, opts.seed, 10);
            Ok(json!({ "violations": r.violations.len() }))
        },
    )
}

fn gset_target(name: &str, g: fn() -> FiniteGroup, k: usize, subgroups_n: usize, lattice: usize) -> ReproductionTarget {
    ReproductionTarget::new(
        name,
        &["gset"],
        Provenance::Derived,
        "G-set components against down-sets of the posetified subgroup category; the bound covers one orbit per subgroup class",
        format!("k={k}"),
        json!({ "passed": true, "subgroups": subgroups_n, "components": lattice }),
        move |_| {
            let g = g();
            let r = gset_sigma_check(&g, k)?;
            Ok(json!({ "passed": r.passed(), "subgroups": subgroups(&g, DEFAULT_GROUP_BOUND)?.len(), "components": r.left.len() }))
        },
    )
}

fn fam_target(name: &str, quiver: fn() -> Result<HomQuiver>, m: usize, size: usize, provenance: Provenance) -> ReproductionTarget {
    ReproductionTarget::new(
        name,
        &["fam"],
        provenance,
        "formal families against down-sets generated by at most m components",
        format!("m={m}"),
        json!({ "passed": true, "components": size }),
        move |_| {
            let r = verify_fam_theorem(&quiver()?, m)?;
            Ok(json!({ "passed": r.passed(), "components": r.left.len() }))
        },
    )
}

/// Every registered target, sorted by name.
pub fn targets() -> Vec<ReproductionTarget> {
    use Provenance::{Derived, Paper, Trivial};
    let mut out = vec![
        count_target("set-components", theories::set, 2, 2, Paper, "sets"),
        count_target("pos-components", theories::pos, 2, 2, Paper, "posets"),
        count_target("mon-components", theories::mon, 2, 1, Paper, "monoids"),
        count_target("grp-components", theories::grp, 2, 1, Paper, "groups"),
        count_target("ab-components", theories::ab, 2, 1, Paper, "abelian groups"),
        count_target("slat-components", theories::slat, 2, 2, Paper, "semilattices"),
        count_target("slat0-components", theories::slat0, 2, 1, Paper, "semilattices with a unit"),
        count_target("lat-components", theories::lat, 2, 2, Paper, "lattices"),
        count_target("set2-components", theories::set2, 1, 4, Derived, "pairs of sets, 2^n with n = 2"),
        count_target("pointed-components", theories::pointed, 2, 1, Paper, "pointed sets"),
        count_target("idem-components", theories::idem, 2, 2, Paper, "idempotents"),
        count_target("rquiv-components", theories::rquiv, 2, 2, Paper, "reflexive quivers"),
        count_target("arrow-components", theories::arrow, 1, 3, Paper, "maps of sets"),
        count_target("cospan-components", theories::cospan, 2, 6, Paper, "cospans of sets"),
        count_target("urel-components", theories::urel, 1, 3, Paper, "sets with a unary relation"),
        count_target("rsrel-components", theories::rsrel, 2, 2, Paper, "reflexive symmetric relations"),
        count_target("per-components", theories::per, 2, 3, Paper, "partial equivalence relations"),
        count_target("preord-components", theories::preord, 2, 2, Paper, "preorders"),
        count_target("erel-components", theories::erel, 2, 2, Paper, "equivalence relations"),
    ];
    for (n, bell) in [(1, 1), (2, 2), (3, 5), (4, 15)] {
        out.push(count_target(
            &format!("nset-bell-{n}"),
            move || theories::n_const(n),
            n,
            bell,
            Paper,
            &format!("sets with {n} constants, Bell({n})"),
        ));
    }
    let acc = |name: &str, chain: fn() -> crate::semantics::ChainRecipe, horizon: usize, expected: Value, tags: &[&'static str]| {
        ReproductionTarget::new(
            name,
            tags,
            Paper,
            "ascending chain probe on the first stages of the chain",
            format!("horizon={horizon}"),
            expected,
            move |_| Ok(acc_probe(&chain(), horizon)?.to_json()),
        )
    };
    let no_stab = |h: usize, from: &str, to: &str| {
        json!({ "verdict": "no-stabilization", "horizon": h, "witness": { "from": from, "to": to } })
    };
    out.push(acc("m-lattices-acc", chains::m_chain, 5, no_stab(5, "M_6", "M_5"), &["acc-false"]));
    out.push(acc("a-primes-acc", chains::a_chain, 4, no_stab(4, "A_4", "A_3"), &["acc-false"]));
    out.push(acc("presheaf-l-acc", || chains::l_chain(4), 5, no_stab(5, "L_4", "L_3"), &["acc-false"]));
    out.push(acc("set-chain-acc", chains::set_chain, 6, json!({ "verdict": "stabilized", "index": 0 }), &["acc-true"]));
    out.push(acc("ordinal-u-acc", || chains::u_chain(2), 6, json!({ "verdict": "stabilized", "index": 3 }), &["acc-true"]));

    let none_found = |n: usize| json!({ "pairs_checked": n, "homs_found": [] });
    out.push(ReproductionTarget::new(
        "m-lattices-no-hom",
        &["acc-false"],
        Paper,
        "no bounded-lattice map M_n -> M_m for 2 <= m < n <= 5",
        "n<=5",
        none_found(6),
        |_| Ok(backward_homs(structures::diamond, &pairs(2, 5))),
    ));
    out.push(ReproductionTarget::new(
        "a-primes-no-hom",
        &["acc-false"],
        Paper,
        "no endomap morphism A_n -> A_m for 1 <= m < n <= 3",
        "n<=3",
        none_found(3),
        |_| Ok(backward_homs(structures::prime_cycles, &pairs(1, 3))),
    ));
    out.push(ReproductionTarget::new(
        "presheaf-l-no-hom",
        &["acc-false"],
        Paper,
        "no presheaf map L_n -> L_m for m < n <= 5 on the 5-element chain",
        "n<=5",
        none_found(15),
        |_| Ok(backward_homs(|i| structures::l_presheaf(4, i), &pairs(0, 5))),
    ));
    for k in [2, 3] {
        out.push(ReproductionTarget::new(
            format!("ordinal-u-{k}"),
            &["acc-true"],
            Paper,
            format!("U_0..U_{} on the chain with {} objects form a total order of components", k + 1, k + 1),
            format!("k={k}"),
            json!({ "components": k + 2, "total": true }),
            move |_| ordinal_components(k),
        ));
    }
    out.push(ReproductionTarget::new(
        "remark-locret-escape",
        &["counterexample"],
        Paper,
        format!("class cut out by the truncated sequent is closed but misses the chain colimit; {SCOPE_NOTE}"),
        "K=2, k=2",
        json!({
            "class_size": 27,
            "closed_under": ["P", "S_c", "H_loc"],
            "hsp_equals_class": true,
            "hsp_fixpoint": true,
            "colimit_stable_from": 0,
            "colimit_in_class": false,
        }),
        |_| remark_locret_escape(),
    ));
    out.push(ReproductionTarget::new(
        "remark-constants-merge",
        &["counterexample"],
        Paper,
        "a surjection merging two constants is not a local retraction",
        "K=3, k=3",
        json!({ "surjective": true, "verdict": "exact-false", "hloc_adds_image": false }),
        |_| remark_constants_merge(),
    ));
    out.push(law_target("closure-laws-set", theories::set, 3));
    out.push(law_target("closure-laws-pos", theories::pos, 3));
    out.push(law_target("closure-laws-urel", theories::urel, 2));
    out.push(ReproductionTarget::new(
        "hsp-set-empty",
        &["closure"],
        Derived,
        format!("P adds the terminal set to the empty set; {SCOPE_NOTE}"),
        "k=3",
        json!({ "result_sizes": [0, 1], "fixpoint": true }),
        |_| {
            let u = Arc::new(enumerate_models(&theories::set(), 3)?);
            let ctx = ClosureContext::new(u.clone())?;
            let e = ModelClass::of_models(&u, &[structures::bare_set(&theories::set(), 0)])?;
            let r = ctx.hsp_closure(&e);
            let sizes: Vec<usize> = r.result.indices().iter().map(|&i| u.models[i].size(0)).collect();
            Ok(json!({ "result_sizes": sizes, "fixpoint": r.is_fixpoint() }))
        },
    ));
    out.push(ReproductionTarget::new(
        "morphism-pos-brel",
        &["morphism"],
        Derived,
        "translated poset axioms fail for bare relations; transitivity needs three points",
        "k=3",
        json!({ "failing_axioms": [0, 1, 2], "transitivity_witness_size": 3 }),
        |_| match check_theory_morphism_bounded(&morphisms::pos_to_brel(), 3)? {
            MorphismVerdict::Countermodels(cs) => Ok(json!({
                "failing_axioms": cs.iter().map(|c| c.axiom).collect::<Vec<_>>(),
                "transitivity_witness_size": cs.iter().find(|c| c.axiom == 2).map(|c| c.model.size(0)),
            })),
            v => Ok(v.to_json()),
        },
    ));
    out.push(ReproductionTarget::new(
        "morphism-pointed-grp",
        &["morphism"],
        Derived,
        "the point goes to the unit, which every group defines",
        "k=3",
        json!({ "verdict": "no-counterexample", "bound": 3 }),
        |_| Ok(check_theory_morphism_bounded(&morphisms::pointed_to_grp(), 3)?.to_json()),
    ));
    out.push(fam_target("fam-single-vertex", || Ok(HomQuiver::from_poset(&FinitePoset::chain(1))), 2, 2, Trivial));
    out.push(fam_target("fam-antichain-2", || Ok(HomQuiver::from_poset(&FinitePoset::antichain(2))), 2, 4, Derived));
    out.push(fam_target(
        "fam-sub-s3",
        || {
            let cat = subgroup_category(&FiniteGroup::symmetric3(), DEFAULT_GROUP_BOUND)?;
            Ok(HomQuiver::from_poset(&crate::sigma::condense_sigma(&cat.quiver).order))
        },
        4,
        6,
        Derived,
    ));
    out.push(gset_target("gset-trivial", FiniteGroup::trivial, 2, 1, 2));
    out.push(gset_target("gset-c2", || FiniteGroup::cyclic(2), 4, 2, 3));
    out.push(gset_target("gset-c4", || FiniteGroup::cyclic(4), 12, 3, 4));
    out.push(gset_target("gset-s3", FiniteGroup::symmetric3, 24, 6, 6));
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

pub fn target_names() -> Vec<String> {
    targets().into_iter().map(|t| t.name).collect()
}

pub fn run_reproduction(name: &str, opts: &RunOptions) -> Result<ReproductionResult> {
    let t = targets()
        .into_iter()
        .find(|t| t.name == name)
        .ok_or_else(|| Error::Unknown { kind: "target", name: name.to_string() })?;
    Ok(t.run(opts))
}

/// Runs the named targets (all when `names` is empty) in parallel; results
/// come back ordered by target name.
pub fn run_reproductions(names: &[String], opts: &RunOptions) -> Result<Vec<ReproductionResult>> {
    let all = targets();
    if let Some(bad) = names.iter().find(|n| !all.iter().any(|t| &t.name == *n)) {
        return Err(Error::Unknown { kind: "target", name: bad.clone() });
    }
    let chosen: Vec<&ReproductionTarget> =
        all.iter().filter(|t| names.is_empty() || names.contains(&t.name)).collect();
    let mut results: Vec<ReproductionResult> = chosen.par_iter().map(|t| t.run(opts)).collect();
    results.sort_by(|a, b| a.target.cmp(&b.target));
    Ok(results)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

pub fn summary_line(results: &[ReproductionResult]) -> String {
    let ok = results.iter().filter(|r| r.matched()).count();
    format!("{ok}/{} reproductions match", results.len())
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("values serialize")
}

pub fn emit_report(results: &[ReproductionResult], format: ReportFormat, seed: u64) -> String {
    match format {
        ReportFormat::Json => {
            let doc = json!({
                "schema": REPORT_SCHEMA,
                "seed": seed,
                "results": results.iter().map(ReproductionResult::to_json).collect::<Vec<_>>(),
                "summary": summary_line(results),
            });
            serde_json::to_string_pretty(&doc).expect("values serialize") + "\n"
        }
        ReportFormat::Text => {
            let width = results.iter().map(|r| r.target.len()).max().unwrap_or(6).max(6);
            let mut out = format!("{:<width$}  {:<8}  {:<9}  {:>8}  {:<14}  computed\n", "target", "verdict", "source", "ms", "bound");
            for r in results {
                out.push_str(&format!(
                    "{:<width$}  {:<8}  {:<9}  {:>8}  {:<14}  {}\n",
                    r.target,
                    r.verdict.as_str(),
                    r.provenance.as_str(),
                    r.runtime_ms,
                    r.bound,
                    compact(&r.computed)
                ));
                if !r.matched() {
                    out.push_str(&format!("{:<width$}  expected {}\n", "", compact(&r.expected)));
                }
            }
            out.push_str(&summary_line(results));
            out.push('\n');
            out
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub kind: &'static str,
    pub name: String,
    pub tags: Vec<&'static str>,
    pub note: String,
}

fn theory_tags(name: &str) -> Vec<&'static str> {
    const ACC_FALSE: &[&str] = &["semigroup", "bounded_lattice", "end", "aut", "quiv", "bowtie", "brel"];
    const TABLE_A: &[&str] = &[
        "set", "pos", "mon", "grp", "ab", "slat", "slat0", "lat", "set2", "pointed", "idem", "rquiv", "arrow", "cospan",
        "urel", "rsrel", "per", "preord", "erel",
    ];
    let mut tags = Vec::new();
    if ACC_FALSE.contains(&name) {
        tags.push("acc-false");
    }
    if TABLE_A.contains(&name) {
        tags.push("table-a");
    }
    tags
}

/// Theories, chains and targets, optionally restricted to one tag.
pub fn list_corpus(tag: Option<&str>) -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for t in theories::bundled_all() {
        let note = format!("{} sorts, {} axioms", t.sig().sorts.len(), t.axioms.len());
        out.push(CorpusEntry { kind: "theory", name: t.name.replace('_', "-"), tags: theory_tags(&t.name), note });
    }
    let generators: [(&str, &[&'static str], &str); 6] = [
        ("n-const(n)", &["table-a"], "sets with n constants, n >= 1"),
        ("remark-locret(K)", &["counterexample"], "a constant e and maps u_0..u_K fixing it; default K = 2"),
        ("remark-constants(K)", &["counterexample"], "constants c_0..c_{K-1}; default K = 3"),
        ("presheaf-omega-op(k)", &["acc-false"], "presheaves on a chain with k + 1 objects"),
        ("presheaf-omega(k)", &["acc-true"], "functors on a chain with k + 1 objects"),
        ("gset(G)", &["gset"], "G-sets for G in trivial, C<n>, S3"),
    ];
    for (name, tags, note) in generators {
        out.push(CorpusEntry { kind: "theory", name: name.into(), tags: tags.to_vec(), note: note.into() });
    }
    let chain_tags: [(&str, &[&'static str]); 7] = [
        ("a-primes", &["acc-false"]),
        ("growing-chains", &[]),
        ("m-lattices", &["acc-false"]),
        ("ordinal-u", &["acc-true"]),
        ("presheaf-l", &["acc-false"]),
        ("remark-locret", &["counterexample"]),
        ("set-chain", &["acc-true"]),
    ];
    for (name, tags) in chain_tags {
        let c = chains::by_name(name).expect("registered chain");
        let note = format!("stages {}, {}, {}, ...", c.label(0), c.label(1), c.label(2));
        out.push(CorpusEntry { kind: "chain", name: name.into(), tags: tags.to_vec(), note });
    }
    for t in targets() {
        out.push(CorpusEntry {
            kind: "target",
            name: t.name.clone(),
            tags: t.tags.clone(),
            note: format!("[{}] {}", t.provenance.as_str(), t.note),
        });
    }
    if let Some(tag) = tag {
        out.retain(|e| e.tags.contains(&tag));
    }
    out
}
