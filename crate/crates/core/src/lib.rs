//! Exact computations with finite group 2-cocycles, cocycle twists of graded
//! algebras, Yetter–Drinfeld braidings, truncated Nichols algebras and
//! braided Heisenberg doubles.

pub mod scalars;
pub mod linalg;
pub mod groups;
pub mod cohomology;
pub mod spin;
pub mod graded;
pub mod yd;
pub mod nichols;
pub mod doubles;
