//! Bundled theories, structures, chains, morphisms and reproduction targets.

pub mod chains;
pub mod morphisms;
pub mod structures;
pub mod targets;
pub mod theories;
