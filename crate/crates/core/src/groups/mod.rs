//! Finite groups: permutations, multiplication-table groups, the class of
//! transpositions and central extensions by cyclic groups.

mod extension;
mod finite;
mod perm;
mod transpositions;

use thiserror::Error;

pub use extension::{central_extension, CentralExtension};
pub use finite::{factorial, FiniteGroup, GroupJson, EXHAUSTIVE_ASSOCIATIVITY_LIMIT};
pub use perm::Perm;
pub use transpositions::TranspositionClass;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("permutations of different sizes ({0} and {1})")]
    SizeMismatch(usize, usize),
    #[error("group axiom violated: {0}")]
    Axiom(String),
    #[error("unknown group specification {0:?}")]
    UnknownSpec(String),
    #[error("cocycle check failed: {0}")]
    NotACocycle(String),
}
