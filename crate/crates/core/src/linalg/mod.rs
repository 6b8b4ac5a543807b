//! Exact linear algebra: sparse matrices over rings, dense elimination over
//! fields, fraction-free integer rank, and Z/m arithmetic.

pub mod dense;
pub mod sparse;
pub mod zmod;

pub use dense::{bareiss_rank, rational_rank_fraction_free, rref, Rref};
pub use sparse::{normalize_vec, vec_add, vec_scale, vec_sub, Accumulator, SparseMatrix, SparseVec};
