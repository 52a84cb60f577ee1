//! Computing with finite racks and quandles.
//!
//! Operations are [`OpTable`]s: `n x n` Cayley tables over `{0, .., n-1}`
//! with `get(a, b) = a * b`. On top of those the crate provides
//!
//! - axiom checks and derived structure ([`table`], [`iso`]),
//! - finite groups and their automorphisms ([`group`]),
//! - quandles built from groups and a catalogue of small tables
//!   ([`constructions`]),
//! - composition of operations, integer powers and the group of operations
//!   they generate ([`composition`]),
//! - families of quandles indexed by a quandle or a group ([`families`]),
//! - isomorph-free enumeration of small quandles and racks ([`enumerate`]).

pub mod composition;
pub mod constructions;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod group;
pub mod iso;
pub mod perm;
pub mod table;

pub use composition::{
    closure_explore, closure_group, compose, distributes_over, n_quandle_order, power,
    word_operation, OpWord, QuandleGroup,
};
pub use constructions::{
    alexander_quandle, catalog, catalog_table, conj_quandle, core_quandle, dihedral_quandle,
    holomorph_quandle, trivial_quandle, CatalogEntry,
};
pub use enumerate::{canonical_form, composition_survey, enumerate_quandles, enumerate_racks};
pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupAutomorphism};
pub use iso::{is_isomorphic, CanonicalTable};
pub use perm::Permutation;
pub use table::{AxiomReport, Classification, OpTable, Sign};
