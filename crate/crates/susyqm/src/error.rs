//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by model construction, simulation and optimization.
#[derive(Debug, Error)]
pub enum Error {
    /// Truncation must be a power of two with at least two bosonic modes.
    #[error("invalid truncation {0}: expected a power of two >= 2")]
    InvalidTruncation(usize),

    /// Model parameters outside their allowed range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A matrix expected to be Hermitian fails the tolerance check.
    #[error("matrix is not Hermitian within {tol:e} (max deviation {max_dev:e})")]
    NotHermitian { tol: f64, max_dev: f64 },

    /// Matrix dimension is not a power of two.
    #[error("matrix dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),

    /// Operands of incompatible sizes.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Qubit or parameter index outside the circuit.
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    /// Objective function returned NaN or infinity.
    #[error("non-finite objective value {value} at {point:?}")]
    NonFiniteObjective { value: f64, point: Vec<f64> },

    /// Invalid optimizer, run or experiment configuration.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// Malformed serialized data (ansatz files, Pauli term files).
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
