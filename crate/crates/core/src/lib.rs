//! A workbench for partial Horn logic over finite structures.
//!
//! * [`syntax`]: signatures, Horn sequents, theories, the `.phl` format,
//!   theory morphisms and relative theories.
//! * [`semantics`]: finite partial structures, evaluation, model checking,
//!   homomorphisms and finite constructions.
//! * [`homsearch`]: homomorphism search, sections and local retractions.
//! * [`sigma`]: hom quivers, posetification, down-set lattices, chain
//!   probes, formal families and finite group actions.
//! * [`closure`]: bounded model universes and the closure operators.
//! * [`corpus`]: the bundled theories, structures and chains.

pub mod closure;
pub mod corpus;
pub mod error;
pub mod homsearch;
pub mod semantics;
pub mod sigma;
pub mod syntax;

pub use error::{Error, Result};
