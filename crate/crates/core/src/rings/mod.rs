//! Exact arithmetic over the rationals, imaginary quadratic fields `Q(√−d)`
//! and the rational quaternion algebra, together with the integrality tests
//! for `O_d` and the Hurwitz order.

mod integer;
mod quad;
mod quat;
mod rational;
mod scalar;
mod text;

pub use integer::{divisors, factor_u64, is_square_free, square_free_part, FACTOR_LIMIT};
pub use quad::{quad_mul, QuadElt, RingSpec};
pub use quat::{quat_mul, QuatElt};
pub use rational::{rat, rational_sqrt, Rational};
pub use scalar::Scalar;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("d = {0} is not a positive square-free integer")]
    NotSquareFree(u64),
    #[error("mismatched rings: Q(sqrt(-{left})) and Q(sqrt(-{right}))")]
    MismatchedRing { left: u64, right: u64 },
    #[error("cannot parse scalar `{text}`: {reason}")]
    Parse { text: String, reason: String },
    #[error("integer {0} is too large to factor by trial division")]
    TooLarge(String),
}
