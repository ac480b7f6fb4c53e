//! Error type shared by the whole library.

use thiserror::Error;

/// Errors produced by descriptor validation, evaluation and assembly.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent sequence descriptor.
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),

    /// Argument outside the domain of an operation (pole, wrong sign, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A coefficient needed by a formula is not present in the descriptor
    /// and its absence is not certified by the expansion order.
    #[error("missing coefficient data: {0}")]
    MissingCoefficient(String),

    /// The hypotheses of the decomposition theorem fail for this pair.
    #[error("decomposition hypothesis violated: {0}")]
    Hypothesis(String),

    /// A certified tail bound could not reach the requested tolerance.
    #[error("precision not attainable: {what} (achieved bound {achieved:e})")]
    Precision { what: String, achieved: f64 },

    /// Two independent evaluation routes disagreed beyond tolerance.
    #[error("cross-check failed: {what} ({lhs:.17e} vs {rhs:.17e}, residual {residual:e} > {tol:e})")]
    CrossCheck {
        what: String,
        lhs: f64,
        rhs: f64,
        residual: f64,
        tol: f64,
    },

    /// File or JSON problem while reading a descriptor.
    #[error("descriptor i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
