//! Cyclic-coefficient 2-cocycles, coboundaries, H²(G, C_m) and the
//! 1-cocycle χ_μ.

mod chi;
mod cocycle;
mod h2;

use thiserror::Error;

pub use chi::{chi_from_cocycle, ChiTable};
pub use cocycle::{CocycleJson, CocycleViolation, OneCochain, ZmCocycle};
pub use h2::{h2_bar, h2_cayley, h2_structure, schur_multiplier_abelian, H2Method, H2Report, BAR_ROUTE_LIMIT, H2_ORDER_LIMIT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("incompatible inputs: {0}")]
    Mismatch(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("group is not elementary abelian of the given exponent")]
    NotElementaryAbelian,
}
