//! Error type shared by the whole crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series or iteration could not reach the requested accuracy.
    #[error("precision error: {0}")]
    Precision(String),

    /// Mismatched inputs, e.g. a sampled function paired with the wrong rule.
    #[error("contract violation: {0}")]
    Contract(String),

    /// An internal routine failed in a way that should not happen for
    /// supported sizes (eigensolver non-convergence and the like).
    #[error("internal error: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
