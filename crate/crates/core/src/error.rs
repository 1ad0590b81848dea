use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("standard factorization needs a word of length at least 2")]
    SingleLetter,

    #[error("word is not a Lyndon word: {0}")]
    NotLyndon(String),

    #[error("invalid order {order} for scheme {scheme}: {reason}")]
    InvalidOrder {
        scheme: String,
        order: usize,
        reason: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cost guard exceeded: {0}")]
    CostGuard(String),

    #[error("polynomial shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("newton iteration did not converge after {iterations} iterations (max residual {residual:e})")]
    NoConvergence {
        iterations: usize,
        residual: f64,
        last: Vec<num_complex::Complex64>,
    },

    #[error("singular jacobian at iteration {iteration}")]
    SingularJacobian {
        iteration: usize,
        last: Vec<num_complex::Complex64>,
    },

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
