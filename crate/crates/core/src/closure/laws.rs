use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{ClosureContext, ModelClass, Operator, SCOPE_NOTE};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawViolation {
    pub law: String,
    pub class: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct LawReport {
    pub theory: String,
    pub bound: usize,
    pub seed: u64,
    pub classes_checked: usize,
    pub violations: Vec<LawViolation>,
    /// Inclusions that fail inside the universe but hold once products
    /// beyond the bound are allowed, each confirmed by an explicit witness.
    pub beyond_bound: Vec<LawViolation>,
}

/// Per-sort cap on the witness products built for `P H_loc ⊆ H_loc P`.
pub const WITNESS_CAP: usize = 512;

impl LawReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let list = |vs: &[LawViolation]| -> Vec<Value> { vs.iter().map(|v| json!({ "law": v.law, "class": v.class })).collect() };
        json!({
            "theory": self.theory,
            "bound": self.bound,
            "seed": self.seed,
            "classes_checked": self.classes_checked,
            "violations": list(&self.violations),
            "beyond_bound": list(&self.beyond_bound),
            "passed": self.passed(),
            "scope": SCOPE_NOTE,
        })
    }
}

/// The empty class, every singleton, and `random` classes drawn with a
/// ChaCha stream seeded by `seed`, each member kept with probability 1/2.
pub fn sample_classes(ctx: &ClosureContext, seed: u64, random: usize) -> Vec<ModelClass> {
    let n = ctx.universe.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![ModelClass::empty(&ctx.universe)];
    out.extend((0..n).map(|i| ctx.class([i])));
    for _ in 0..random {
        out.push(ctx.class((0..n).filter(|_| rng.gen_bool(0.5))));
    }
    out
}

/// Checks on every sampled class: extensivity, monotonicity against the
/// class grown by one random member, idempotence of each operator, and the
/// inclusions `P H ⊆ H P`, `P S_c ⊆ S_c P`, `S_c H ⊆ H S_c`. The composite
/// `S_c P` is taken over products of any size, see
/// [`ClosureContext::closure_sc_p`]. A failure of `P H ⊆ H P` whose missing
/// models all have a witness from [`ClosureContext::hloc_p_witness`] goes to
/// `beyond_bound` instead of `violations`.
pub fn operator_law_report(ctx: &ClosureContext, seed: u64, random: usize) -> LawReport {
    use Operator::{Hloc, Sc, P};
    let classes = sample_classes(ctx, seed, random);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let n = ctx.universe.len();
    let mut violations = Vec::new();
    let mut beyond_bound = Vec::new();
    for e in &classes {
        let mut fail = |law: String| violations.push(LawViolation { law, class: e.indices() });
        let bigger = if n == 0 { e.clone() } else { e.union(&ctx.class([rng.gen_range(0..n)])) };
        for op in Operator::ALL {
            let once = ctx.apply(op, e);
            if !e.is_subset(&once) {
                fail(format!("E ⊆ {}(E)", op.name()));
            }
            if !once.is_subset(&ctx.apply(op, &bigger)) {
                fail(format!("{} monotone", op.name()));
            }
            if ctx.apply(op, &once) != once {
                fail(format!("{0}{0} = {0}", op.name()));
            }
        }
        for (outer, inner) in [(P, Hloc), (P, Sc), (Sc, Hloc)] {
            let lhs = ctx.apply(outer, &ctx.apply(inner, e));
            let rhs = match (inner, outer) {
                (Sc, P) => ctx.closure_sc_p(e),
                _ => ctx.apply(inner, &ctx.apply(outer, e)),
            };
            if lhs.is_subset(&rhs) {
                continue;
            }
            let law = format!("{0}{1} ⊆ {1}{0}", outer.name(), inner.name());
            let witnessed = (outer, inner) == (P, Hloc)
                && lhs.minus(&rhs).into_iter().all(|x| ctx.hloc_p_witness(e, x, WITNESS_CAP));
            if witnessed {
                beyond_bound.push(LawViolation { law, class: e.indices() });
            } else {
                fail(law);
            }
        }
    }
    LawReport {
        theory: ctx.universe.theory.name.clone(),
        bound: ctx.universe.max_size,
        seed,
        classes_checked: classes.len(),
        violations,
        beyond_bound,
    }
}
