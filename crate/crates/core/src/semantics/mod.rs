//! Finite partial structures: interpretation of terms and formulas, model
//! checking, homomorphisms, closed monos, and the finite limits and
//! colimits used by the closure operators.

mod chain;
mod construct;
mod eval;
mod hom;
mod structure;

pub use chain::{chain_colimit, ChainRecipe, ColimitOutcome};
pub use construct::{
    disjoint_union, induced_substructure, product, pullback, reduct, reduct_maps, terminal, SortMaps,
};
pub use eval::{
    eval, eval_formula, eval_term, for_each_assignment, holds, is_model, model_counterexample,
    sequent_counterexample, sequent_valid,
};
pub use hom::{check_homomorphism, closed_mono_violation, is_closed_mono, is_homomorphism, HomViolation, Homomorphism};
pub use structure::{tuple_count, PartialStructure};
