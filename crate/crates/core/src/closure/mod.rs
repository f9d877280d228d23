//! Bounded model universes and the closure operators `P`, `S_c`, `H_loc`
//! acting on classes of their models.

mod definable;
mod enumerate;
mod laws;
mod ops;

pub use definable::{check_theory_morphism_bounded, definable_class, parse_extra, Countermodel, MorphismVerdict};
pub use enumerate::{
    canonical_form, canonical_key, canonicalize, enumerate_models, enumerate_models_cached, enumerate_models_with_budget,
    universe_cache_key, ModelUniverse, DEFAULT_BUDGET, MAX_BOUND,
};
pub use laws::{operator_law_report, sample_classes, LawReport, LawViolation, WITNESS_CAP};
pub use ops::{ClosureContext, HlocRule, HspReport, ModelClass, Operator, SCOPE_NOTE};
