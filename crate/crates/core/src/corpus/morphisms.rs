//! Corpus theory morphisms.

use crate::syntax::TheoryMorphism;

use super::theories::document;

/// A bundled morphism by name (hyphens and underscores interchangeable).
pub fn by_name(name: &str) -> Option<TheoryMorphism> {
    document().morphism(&name.trim().replace('-', "_")).cloned()
}

pub fn names() -> Vec<String> {
    document().morphisms().map(|m| m.name.clone()).collect()
}

fn bundled(name: &str) -> TheoryMorphism {
    by_name(name).unwrap_or_else(|| panic!("morphism {name} is bundled"))
}

/// Bare sets into posets (no symbols to map).
pub fn set_to_pos() -> TheoryMorphism {
    bundled("set_to_pos")
}

/// Posets into bare binary relations, `leq ↦ r`.
pub fn pos_to_brel() -> TheoryMorphism {
    bundled("pos_to_brel")
}

/// Pointed sets into groups, `pt ↦ e`.
pub fn pointed_to_grp() -> TheoryMorphism {
    bundled("pointed_to_grp")
}

/// Posets into uniquely difference-ordered semirings.
pub fn pos_to_udos() -> TheoryMorphism {
    bundled("pos_to_udos")
}
