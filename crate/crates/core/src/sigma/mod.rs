//! Hom quivers and their posetification, down-set lattices, ascending
//! chain probes, formal families, and finite group actions.

mod acc;
mod fam;
mod group;
mod gset;
mod lower;
mod poset;
mod quiver;

pub use acc::{acc_probe, StabilizationReport};
pub use fam::{verify_fam_theorem, FamReport, MAX_FAMILIES};
pub use group::{subgroups, FiniteGroup, Subgroup, DEFAULT_GROUP_BOUND};
pub use gset::{coset_gset, gset_sigma_check, subgroup_category, GsetReport, SubgroupCategory};
pub use lower::{generators_of_lower_set, lower_set_lattice, DownSet, LowerSetLattice, MAX_DOWN_SETS};
pub use poset::{find_isomorphism, FinitePoset};
pub use quiver::{build_hom_quiver, classify_components, condense_sigma, HomQuiver, SigmaPoset};
