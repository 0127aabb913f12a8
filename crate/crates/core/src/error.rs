use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole: {0}")]
    Pole(String),

    #[error("series did not converge within {iterations} terms: {context}")]
    NonConvergence { context: String, iterations: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("grid is not symmetric about the origin")]
    GridAsymmetry,

    #[error("plancherel density evaluated at the origin")]
    Origin,

    #[error("heat kernel not positive at x = {x}: {value}")]
    Positivity { x: f64, value: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
