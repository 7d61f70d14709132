//! Exact scalars: arbitrary-precision rationals and real quadratic fields,
//! plus the integer combinatorics used by the bounds.

mod int;
mod quad;
mod scalar;

pub use int::{binomial, ceil_log, ceil_log_capped, gcd_vector, least_prime_factor, DEFAULT_CEIL_LOG_CAP};
pub use quad::{is_square_free, QuadExt};
pub use scalar::{ExactScalar, Field};

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("values from different quadratic fields sqrt({0}) and sqrt({1})")]
    FieldMismatch(u64, u64),
    #[error("radicand {0} is not a square-free integer >= 2")]
    BadRadicand(u64),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("iteration cap {0} exceeded")]
    CapExceeded(u64),
}
