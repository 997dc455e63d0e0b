//! Finite groups, abelian groups with characters, group actions, and the cochain data of
//! generalized categorical groups.

mod abelian;
mod action;
mod gcg;
mod group;

pub use abelian::{enumerate_characters, AbelianElement, AbelianGroup, Character, Phase};
pub use action::GAction;
pub use gcg::{GcgData, GCG_FORMAT};
pub use group::FiniteGroup;
