mod common;

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use phl::closure::{enumerate_models, ClosureContext, ModelClass, Operator};
use phl::corpus::theories;
use proptest::prelude::*;

use common::{naive_homs, preserves};

fn set_ctx() -> &'static ClosureContext {
    static CTX: OnceLock<ClosureContext> = OnceLock::new();
    CTX.get_or_init(|| ClosureContext::new(Arc::new(enumerate_models(&theories::set(), 4).unwrap())).unwrap())
}

fn pos_ctx() -> &'static ClosureContext {
    static CTX: OnceLock<ClosureContext> = OnceLock::new();
    CTX.get_or_init(|| ClosureContext::new(Arc::new(enumerate_models(&theories::pos(), 3).unwrap())).unwrap())
}

fn urel_ctx() -> &'static ClosureContext {
    static CTX: OnceLock<ClosureContext> = OnceLock::new();
    CTX.get_or_init(|| ClosureContext::new(Arc::new(enumerate_models(&theories::urel(), 2).unwrap())).unwrap())
}

fn sizes(ctx: &ClosureContext, c: &ModelClass) -> BTreeSet<usize> {
    c.indices().iter().map(|&i| ctx.universe.models[i].size(0)).collect()
}

fn class_of_sizes(ctx: &ClosureContext, s: &BTreeSet<usize>) -> ModelClass {
    ctx.class((0..ctx.universe.len()).filter(|&i| s.contains(&ctx.universe.models[i].size(0))))
}

/// Products of sets: the empty product, then every product of members
/// within the bound.
fn set_products(s: &BTreeSet<usize>, k: usize) -> BTreeSet<usize> {
    let mut out: BTreeSet<usize> = s.iter().copied().chain([1]).collect();
    loop {
        let next: BTreeSet<usize> =
            out.iter().flat_map(|&a| s.iter().map(move |&b| a * b)).filter(|&n| n <= k).chain(out.iter().copied()).collect();
        if next == out {
            return out;
        }
        out = next;
    }
}

/// Closed monos of sets are injections.
fn set_subobjects(s: &BTreeSet<usize>) -> BTreeSet<usize> {
    s.iter().flat_map(|&n| 0..=n).collect()
}

/// Local retractions of sets are surjections.
fn set_images(s: &BTreeSet<usize>) -> BTreeSet<usize> {
    s.iter().flat_map(|&n| if n == 0 { 0..=0 } else { 1..=n }).collect()
}

/// Injective homomorphisms reflecting every relation.
fn naive_closed_mono(ctx: &ClosureContext, b: usize, a: usize) -> bool {
    let (mb, ma) = (&ctx.universe.models[b], &ctx.universe.models[a]);
    naive_homs(mb, ma).into_iter().any(|h| {
        let injective = h.iter().all(|m| (0..m.len()).all(|x| (0..x).all(|y| m[x] != m[y])));
        injective && {
            // Read the image back as a structure on `b` and ask for the identity.
            let mut pulled = (**mb).clone();
            for (r, sym) in mb.sig.relations.iter().enumerate() {
                for i in 0..pulled.rels[r].len() {
                    let t = mb.decode_tuple(&sym.args, i);
                    let img: Vec<usize> = t.iter().zip(&sym.args).map(|(&x, &s)| h[s][x]).collect();
                    pulled.rels[r][i] = ma.rel(r, &img);
                }
            }
            let id: Vec<Vec<usize>> = mb.carriers.iter().map(|c| (0..c.len()).collect()).collect();
            preserves(&id, &pulled, mb)
        }
    })
}

fn class_strategy(n: usize) -> impl Strategy<Value = Vec<bool>> {
    prop::collection::vec(any::<bool>(), n)
}

fn from_mask(ctx: &ClosureContext, mask: &[bool]) -> ModelClass {
    ctx.class((0..mask.len()).filter(|&i| mask[i]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn set_operators_match_closed_forms(mask in class_strategy(5)) {
        let ctx = set_ctx();
        let e = from_mask(ctx, &mask);
        let s = sizes(ctx, &e);
        prop_assert_eq!(ctx.closure_p(&e), class_of_sizes(ctx, &set_products(&s, 4)));
        prop_assert_eq!(ctx.closure_sc(&e), class_of_sizes(ctx, &set_subobjects(&s)));
        prop_assert_eq!(ctx.closure_hloc(&e), class_of_sizes(ctx, &set_images(&s)));
    }

    #[test]
    fn operators_are_closures(which in 0usize..2, mask in class_strategy(9), extra in 0usize..9) {
        let ctx = [pos_ctx(), urel_ctx()][which];
        let n = ctx.universe.len();
        let e = from_mask(ctx, &mask[..n.min(9)]);
        let bigger = e.union(&ctx.class([extra % n]));
        for op in Operator::ALL {
            let once = ctx.apply(op, &e);
            prop_assert!(e.is_subset(&once));
            prop_assert_eq!(ctx.apply(op, &once), once.clone());
            prop_assert!(once.is_subset(&ctx.apply(op, &bigger)));
        }
        let hsp = ctx.hsp_closure(&e);
        prop_assert!(hsp.is_fixpoint());
        prop_assert!(e.is_subset(&hsp.result));
    }

    #[test]
    fn closed_subobjects_match_naive_search(which in 0usize..2, mask in class_strategy(9)) {
        let ctx = [pos_ctx(), urel_ctx()][which];
        let n = ctx.universe.len();
        let e = from_mask(ctx, &mask[..n.min(9)]);
        let expected = ctx.class((0..n).filter(|&b| e.indices().iter().any(|&a| naive_closed_mono(ctx, b, a))));
        prop_assert_eq!(ctx.closure_sc(&e), expected);
    }
}
