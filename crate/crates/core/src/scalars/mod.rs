//! Exact coefficient rings: rationals, cyclotomic fields and the group
//! rings Q[C_m].

mod cyclotomic;
mod group_ring;
mod rational;

use std::fmt::Debug;

use thiserror::Error;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, Cyclotomic};
pub use group_ring::GroupRingScalar;
pub use rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("element is not a unit")]
    NonUnit,
    #[error("specialization point is not a root of unity of the required order")]
    InvalidRoot,
    #[error("recombined coefficients are not rational")]
    NotRational,
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}

/// Commutative ring with exact equality.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// self^e by repeated squaring.
    fn powu(&self, e: u64) -> Self {
        let (mut base, mut e, mut acc) = (self.clone(), e, Self::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

pub trait Field: Ring {
    fn inv(&self) -> Result<Self, ScalarError>;

    fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self.mul(&other.inv()?))
    }
}
