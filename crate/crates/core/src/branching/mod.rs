//! Restriction of characters to subgroups.
//!
//! An [`Embedding`] is an integer matrix taking source fundamental-weight
//! coordinates to target ones. Subsystem subgroups are built from a set of
//! source roots and checked against the target Cartan matrix; foldings are
//! given by their images of fundamental weights.

mod catalog;
mod embedding;
mod subsystem;

pub use catalog::{
    a_even_b, catalog, derive_builtin, derive_subsystem, diagonal, e6_c4, e6_f4, Catalog, PAIRS,
};
pub use embedding::{
    branch, branch_with, parse_stanzas, restrict_character, restrict_character_capped,
    restrict_weight, validate_embedding, Check, Embedding, Provenance, ValidationReport,
};
pub use subsystem::{
    cartan_isomorphisms, cartan_of, levi, reflection_closure, simple_roots_of, subsystem_embedding,
};
