//! Acceptance suite: one line per criterion, each with a pinned time limit.
//! Runs without the libtest harness so the lines always show.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use anyhow::{anyhow, ensure, Result};
use phl::closure::{
    definable_class, enumerate_models, operator_law_report, parse_extra, sample_classes, ClosureContext, ModelClass, Operator,
};
use phl::corpus::targets::DEFAULT_SEED;
use phl::corpus::{chains, structures, theories};
use phl::homsearch::{find_hom, local_retraction_check, LocalRetractionVerdict, RetractionRule, SearchMode};
use phl::semantics::{chain_colimit, ChainRecipe, ColimitOutcome, Homomorphism, PartialStructure};
use phl::sigma::{
    acc_probe, classify_components, condense_sigma, gset_sigma_check, subgroup_category, subgroups, verify_fam_theorem,
    FiniteGroup, FinitePoset, HomQuiver, StabilizationReport, DEFAULT_GROUP_BOUND,
};
use phl::syntax::Theory;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use common::props::{check_instance, labs, Outcome};
use common::{bell, brute_force_subgroup_count, isomorphic, naive_component_count, naive_models};

/// Time limit for each step, or for the criterion as a whole.
#[derive(Clone, Copy)]
enum Limit {
    Each(u64),
    Total(u64),
}

struct Timer {
    limit: Limit,
    slowest: Duration,
}

impl Timer {
    fn step<T>(&mut self, what: &str, f: impl FnOnce() -> Result<T>) -> Result<T> {
        let start = Instant::now();
        let out = f()?;
        let took = start.elapsed();
        self.slowest = self.slowest.max(took);
        if let Limit::Each(secs) = self.limit {
            ensure!(took <= Duration::from_secs(secs), "{what} took {took:.2?}, limit {secs}s");
        }
        Ok(out)
    }
}

fn components(t: &Arc<Theory>, k: usize) -> Result<usize> {
    let family: Vec<PartialStructure> = enumerate_models(t, k)?.models.iter().map(|m| (**m).clone()).collect();
    Ok(classify_components(&family).len())
}

fn criterion_1(timer: &mut Timer) -> Result<String> {
    let mut cases: Vec<(String, Arc<Theory>, usize, usize)> = vec![
        ("Set".into(), theories::set(), 2, 2),
        ("Pos".into(), theories::pos(), 2, 2),
        ("Set^->".into(), theories::arrow(), 1, 3),
        ("Cospan".into(), theories::cospan(), 2, 6),
        ("URel".into(), theories::urel(), 1, 3),
        ("PER".into(), theories::per(), 2, 3),
        ("Idem".into(), theories::idem(), 2, 2),
        ("PreOrd".into(), theories::preord(), 2, 2),
        ("ERel".into(), theories::erel(), 2, 2),
    ];
    for n in 1..=4 {
        cases.push((format!("{n}/Set"), theories::n_const(n), n, [1, 2, 5, 15][n - 1]));
    }
    for (name, t, k, expected) in &cases {
        let got = timer.step(name, || components(t, *k))?;
        ensure!(got == *expected, "{name}: {got} components, expected {expected}");
        let oracle = naive_component_count(&naive_models(t, *k));
        ensure!(oracle == got, "{name}: naive oracle counts {oracle}");
    }
    ensure!((1..=4).map(bell).eq([1, 2, 5, 15]), "Bell oracle");
    Ok(format!("{} counts", cases.len()))
}

fn no_backward_hom(stage: impl Fn(usize) -> PartialStructure, pairs: &[(usize, usize)]) -> Result<()> {
    for &(n, m) in pairs {
        let (a, b) = (Arc::new(stage(n)), Arc::new(stage(m)));
        ensure!(find_hom(&a, &b, SearchMode::Exists).is_empty(), "found a map from stage {n} to stage {m}");
    }
    Ok(())
}

fn criterion_2(timer: &mut Timer) -> Result<String> {
    let pairs = |lo: usize, hi: usize| -> Vec<(usize, usize)> { (lo..=hi).flat_map(|n| (lo..n).map(move |m| (n, m))).collect() };
    type Family = (&'static str, Box<dyn Fn(usize) -> PartialStructure>, Vec<(usize, usize)>, ChainRecipe);
    let families: [Family; 3] = [
        ("M_n", Box::new(structures::diamond), pairs(2, 5), chains::m_chain()),
        ("A_n", Box::new(structures::prime_cycles), pairs(1, 3), chains::a_chain()),
        ("L_n", Box::new(|i| structures::l_presheaf(4, i)), pairs(0, 5), chains::l_chain(4)),
    ];
    let mut checked = 0;
    for (name, stage, pairs, chain) in &families {
        timer.step(name, || {
            no_backward_hom(stage, pairs)?;
            for horizon in [4, 5] {
                let r = acc_probe(chain, horizon)?;
                ensure!(
                    matches!(r, StabilizationReport::NoStabilizationUpTo { .. }),
                    "{name} chain stabilizes at horizon {horizon}"
                );
            }
            Ok(())
        })?;
        checked += pairs.len();
    }
    Ok(format!("{checked} pairs without backward maps, 6 probes without stabilization"))
}

fn criterion_3(timer: &mut Timer) -> Result<String> {
    for k in [2, 3] {
        timer.step("ordinal chain", || {
            let family: Vec<PartialStructure> = (0..=k + 1).map(|a| structures::u_functor(k, a)).collect();
            let sigma = classify_components(&family);
            ensure!(sigma.len() == k + 2, "k = {k}: {} components", sigma.len());
            ensure!(sigma.order.is_total(), "k = {k}: components are not totally ordered");
            Ok(())
        })?;
    }
    Ok("k = 2, 3 give chains of 4 and 5 components".into())
}

fn criterion_4(timer: &mut Timer) -> Result<String> {
    let instances = 280;
    let total = timer.step("property suite", || {
        let labs = labs();
        let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
        let mut total = Outcome::default();
        for i in 0..instances {
            let picks: [usize; 7] = std::array::from_fn(|_| rng.gen_range(0..10_000));
            total.absorb(check_instance(&labs[i % labs.len()], &picks));
        }
        Ok(total)
    })?;
    ensure!(total.violations.is_empty(), "{:?}", total.violations);
    ensure!(total.exercised.len() == 6, "unexercised properties: {:?}", total.exercised);
    let counts: Vec<String> = total.exercised.iter().map(|(k, n)| format!("{k} x{n}")).collect();
    Ok(format!("{instances} instances, 0 violations; {}", counts.join(", ")))
}

fn criterion_5(timer: &mut Timer) -> Result<String> {
    let mut classes = 0;
    for (t, k) in [(theories::set(), 3), (theories::pos(), 3), (theories::urel(), 2)] {
        timer.step(&t.name, || {
            let ctx = ClosureContext::new(Arc::new(enumerate_models(&t, k)?))?;
            let r = operator_law_report(&ctx, DEFAULT_SEED, 10);
            ensure!(r.passed(), "{} k = {k}: {:?}", t.name, r.violations);
            for e in sample_classes(&ctx, DEFAULT_SEED, 10) {
                ensure!(ctx.hsp_closure(&e).is_fixpoint(), "{} k = {k}: HSP of {e:?} is not a fixpoint", t.name);
            }
            classes += r.classes_checked;
            Ok(())
        })?;
    }
    let definable = [
        (theories::pos(), 3, "[x:*, y:*] leq(x, y) |- leq(y, x);"),
        (theories::pos(), 3, "[x:*, y:*] top |- leq(x, y);"),
        (theories::set(), 3, "[x:*, y:*] top |- x = y;"),
        (theories::urel(), 2, "[x:*] top |- p(x);"),
        (theories::urel(), 2, "[x:*, y:*] p(x) & p(y) |- x = y;"),
        (theories::mon(), 2, "[x:*, y:*] top |- mul(x, y) = mul(y, x);"),
        (theories::per(), 2, "[x:*] top |- r(x, x);"),
    ];
    for (t, k, text) in &definable {
        timer.step(text, || {
            let u = Arc::new(enumerate_models(t, *k)?);
            let e = definable_class(&u, &parse_extra(&u, text)?);
            let hsp = ClosureContext::new(u)?.hsp_closure(&e);
            ensure!(hsp.result == e && hsp.is_fixpoint(), "{}: `{text}` is not an HSP fixpoint", t.name);
            Ok(())
        })?;
    }
    Ok(format!("{classes} sampled classes, {} definable classes", definable.len()))
}

fn criterion_6(timer: &mut Timer) -> Result<String> {
    timer.step("retract remark", || {
        let k = 2;
        let u = Arc::new(enumerate_models(&theories::remark_locret(k), k)?);
        let e = definable_class(&u, &parse_extra(&u, "[x:*] u_0(x) = e & u_1(x) = e & u_2(x) = e |- x = e;")?);
        let ctx = ClosureContext::new(u.clone())?;
        for op in Operator::ALL {
            ensure!(ctx.apply(op, &e) == e, "class not closed under {}", op.name());
        }
        let ColimitOutcome::Stable { structure, .. } = chain_colimit(&chains::remark_locret(k), k + 2)? else {
            return Err(anyhow!("chain colimit did not stabilize"));
        };
        let at = u.lookup(&structure).ok_or_else(|| anyhow!("colimit outside the universe"))?;
        ensure!(!e.contains(at), "colimit lies in the class");
        Ok(())
    })?;
    timer.step("constants remark", || {
        let t = theories::remark_constants(3);
        let a = Arc::new(structures::constants_model(&t, &[0, 1, 2], 3));
        let b = Arc::new(structures::constants_model(&t, &[0, 0, 1], 2));
        let p = Homomorphism::new(a.clone(), b.clone(), vec![vec![0, 0, 1]])?;
        ensure!(p.is_surjective(), "merging map is not surjective");
        let v = local_retraction_check(&p, RetractionRule::Exact(&t))?;
        ensure!(matches!(v, LocalRetractionVerdict::ExactFalse { .. }), "verdict {v:?}");
        let u = Arc::new(enumerate_models(&t, 3)?);
        let e = ModelClass::of_models(&u, &[(*a).clone()])?;
        let image = u.lookup(&b).ok_or_else(|| anyhow!("image is not a model"))?;
        ensure!(!ClosureContext::new(u)?.closure_hloc(&e).contains(image), "H_loc adds the merged image");
        Ok(())
    })?;
    Ok("closed class misses the colimit; merging surjection is exact-false".into())
}

fn criterion_7(timer: &mut Timer) -> Result<String> {
    let s3_sub = || -> Result<HomQuiver> {
        let cat = subgroup_category(&FiniteGroup::symmetric3(), DEFAULT_GROUP_BOUND)?;
        Ok(HomQuiver::from_poset(&condense_sigma(&cat.quiver).order))
    };
    let quivers = [
        ("single vertex", HomQuiver::from_poset(&FinitePoset::chain(1)), 2),
        ("two vertices", HomQuiver::from_poset(&FinitePoset::antichain(2)), 2),
        ("Sub(S3)", s3_sub()?, 4),
    ];
    for (name, q, m) in &quivers {
        let r = timer.step(name, || Ok(verify_fam_theorem(q, *m)?))?;
        ensure!(r.passed(), "Fam check fails for {name}: {:?}", r.counterexample);
    }
    for (g, k, n) in [
        (FiniteGroup::trivial(), 2, 1),
        (FiniteGroup::cyclic(2), 4, 2),
        (FiniteGroup::cyclic(4), 12, 3),
        (FiniteGroup::symmetric3(), 24, 6),
    ] {
        let r = timer.step(&g.name, || Ok(gset_sigma_check(&g, k)?))?;
        ensure!(r.passed(), "{}: {:?}", g.name, r.counterexample);
        let found = subgroups(&g, DEFAULT_GROUP_BOUND)?.len();
        ensure!(found == n && brute_force_subgroup_count(&g) == n, "{}: {found} subgroups, expected {n}", g.name);
        if g.order() == 6 {
            ensure!(r.left.len() == 6 && r.right.len() == 6, "S3 sides have {} and {}", r.left.len(), r.right.len());
        }
    }
    Ok("3 quivers, 4 groups with 1, 2, 3, 6 subgroups".into())
}

fn criterion_8(timer: &mut Timer) -> Result<String> {
    let mut all = theories::bundled_all();
    all.extend([theories::n_const(2), theories::remark_constants(2), theories::remark_locret(1), theories::presheaf_omega(2)]);
    let checked = timer.step("enumeration oracle", || {
        for t in &all {
            for k in 0..=2 {
                let naive = naive_models(t, k);
                let u = enumerate_models(t, k)?;
                ensure!(u.len() == naive.len(), "{} k = {k}: {} vs naive {}", t.name, u.len(), naive.len());
                ensure!(naive.iter().all(|m| u.lookup(m).is_some()), "{} k = {k}: naive model missing", t.name);
            }
        }
        let u = enumerate_models(&theories::pos(), 2)?;
        let expected = [structures::antichain(0), structures::antichain(1), structures::antichain(2), structures::chain(2)];
        ensure!(u.len() == 4, "{} posets", u.len());
        ensure!(
            expected.iter().all(|m| u.models.iter().any(|n| isomorphic(m, n))),
            "posets of size <= 2 are not {{0, 1, 2, chain 2}}"
        );
        Ok(all.len())
    })?;
    Ok(format!("{checked} theories at k <= 2"))
}

fn strip_runtime(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("runtime_ms");
            map.values_mut().for_each(strip_runtime);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_runtime),
        _ => {}
    }
}

fn criterion_9(timer: &mut Timer) -> Result<String> {
    let run = || -> Result<Value> {
        let out = Command::new(env!("CARGO_BIN_EXE_phl")).args(["repro", "--all", "--format", "json"]).output()?;
        ensure!(out.status.success(), "phl repro exited with {}", out.status);
        let mut v: Value = serde_json::from_slice(&out.stdout)?;
        strip_runtime(&mut v);
        Ok(v)
    };
    let first = timer.step("first run", run)?;
    let second = timer.step("second run", run)?;
    ensure!(first == second, "the two reports differ");
    Ok(format!("{} results identical across runs", first["results"].as_array().map_or(0, Vec::len)))
}

fn main() -> ExitCode {
    type Criterion = fn(&mut Timer) -> Result<String>;
    let criteria: [(Limit, &str, Criterion); 9] = [
        (Limit::Each(10), "component counts", criterion_1),
        (Limit::Each(30), "non-ACC witnesses", criterion_2),
        (Limit::Total(10), "ordinal chain", criterion_3),
        (Limit::Total(60), "local retraction properties", criterion_4),
        (Limit::Total(120), "closure operator laws", criterion_5),
        (Limit::Total(30), "counterexamples", criterion_6),
        (Limit::Total(60), "families and G-sets", criterion_7),
        (Limit::Total(60), "enumeration oracle", criterion_8),
        (Limit::Total(120), "determinism", criterion_9),
    ];
    let mut failed = 0;
    for (i, &(limit, name, run)) in criteria.iter().enumerate() {
        let mut timer = Timer { limit, slowest: Duration::ZERO };
        let start = Instant::now();
        let outcome = run(&mut timer).and_then(|detail| {
            let took = start.elapsed();
            if let Limit::Total(secs) = limit {
                ensure!(took <= Duration::from_secs(secs), "took {took:.2?}, limit {secs}s");
            }
            Ok(detail)
        });
        let took = start.elapsed();
        let pinned = match limit {
            Limit::Each(secs) => format!("< {secs}s each, slowest {:.2?}", timer.slowest),
            Limit::Total(secs) => format!("< {secs}s"),
        };
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} ({took:.2?}, {pinned})", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {e:#} ({took:.2?}, {pinned})", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
