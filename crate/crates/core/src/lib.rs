//! State-sum invariants of closed oriented 3-manifolds from special spherical
//! multi-fusion categories.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: finite groups, characters, group actions and the cocycle data of
//!   generalized categorical groups;
//! * [`category`]: skeletal multiplicity-free category data, its JSON form, and validators
//!   for the identities that make the state sum a topological invariant;
//! * [`builders`]: matrix categories, idempotent-completed generalized categorical groups,
//!   Dijkgraaf–Witten data and graded lifts;
//! * [`topology`]: ordered Δ-complexes, Pachner moves and a small census of closed manifolds;
//! * [`statesum`]: the coloring enumeration, the pointed fast path and a flat-connection
//!   counting oracle.

pub mod algebra;
pub mod error;
pub mod report;

pub use error::{Error, Result};
pub use report::{Check, ValidationReport};
pub mod category;
pub mod builders;
pub mod topology;
pub mod statesum;
