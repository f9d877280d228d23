//! Homomorphism search, sections, lifts and local retractions.

mod retraction;
mod search;

use std::sync::Arc;

pub use retraction::{find_lift, find_section, local_retraction_check, LocalRetractionVerdict, RetractionRule};
pub use search::HomSearch;

use crate::semantics::{Homomorphism, PartialStructure};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Exists,
    First,
    /// At most this many, pairwise distinct.
    Enumerate(usize),
}

/// Homomorphisms `m → n` in search order: at most one for `Exists` and
/// `First`, up to the limit for `Enumerate`.
pub fn find_hom(m: &Arc<PartialStructure>, n: &Arc<PartialStructure>, mode: SearchMode) -> Vec<Homomorphism> {
    let limit = match mode {
        SearchMode::Exists | SearchMode::First => 1,
        SearchMode::Enumerate(limit) => limit,
    };
    HomSearch::new(m, n)
        .enumerate(limit)
        .into_iter()
        .map(|maps| Homomorphism::new_unchecked(m.clone(), n.clone(), maps))
        .collect()
}

pub fn hom_exists(m: &PartialStructure, n: &PartialStructure) -> bool {
    HomSearch::new(m, n).exists()
}
