use thiserror::Error;

use crate::gaussian::GaussInt;

/// Errors raised across the toolkit.
///
/// Every numerical routine that can lose accuracy reports it through
/// [`Error::Accuracy`] rather than returning a silently degraded value.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("{a} is not invertible modulo {modulus} (gcd {gcd})")]
    NotInvertible {
        a: GaussInt,
        modulus: GaussInt,
        gcd: GaussInt,
    },

    #[error("size {requested} exceeds cap {cap}")]
    Size { requested: u64, cap: u64 },

    #[error("could not factor {0} within the trial-division budget")]
    FactorizationBudget(GaussInt),

    #[error("argument |z| = {abs_z} outside the series regime (|z| <= {limit})")]
    Regime { abs_z: f64, limit: f64 },

    #[error("accuracy target {tolerance:e} not met (achieved {achieved:e})")]
    Accuracy { achieved: f64, tolerance: f64 },

    #[error("pole: {0}")]
    Pole(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("compute budget exceeded: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, Error>;
