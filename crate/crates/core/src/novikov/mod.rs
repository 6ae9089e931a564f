//! Exact rationals and single-variable Novikov scalars over 𝔽₂.

mod rational;
mod scalar;

pub use rational::{rat, ParseRationalError, Rational};
pub use scalar::{nov_add, nov_mul, nov_valuation, NovikovScalar, NovikovSpec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NovikovError {
    #[error("scalars over different Novikov rings ({left} vs {right})")]
    SpecMismatch { left: String, right: String },
    #[error("valuation of zero is undefined")]
    ValuationOfZero,
    #[error("invalid Novikov spec: {0}")]
    BadSpec(String),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}
