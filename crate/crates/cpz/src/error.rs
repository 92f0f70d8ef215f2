use thiserror::Error;

/// Errors produced by set construction and set operations.
#[derive(Debug, Error)]
pub enum CpzError {
    /// Dimension mismatch between two objects; names both shapes.
    #[error("shape mismatch in {context}: {left} vs {right}")]
    Shape {
        context: &'static str,
        left: String,
        right: String,
    },

    /// An input violates a type invariant (asymmetry, non-positive-definite
    /// matrix, out-of-range factor, ...).
    #[error("validation error: {0}")]
    Validation(String),

    /// An iterative method exhausted its iteration budget.
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// Interval arithmetic domain error (e.g. division by an interval
    /// containing zero).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CpzError>;

impl CpzError {
    pub(crate) fn shape(context: &'static str, left: impl ToString, right: impl ToString) -> Self {
        CpzError::Shape {
            context,
            left: left.to_string(),
            right: right.to_string(),
        }
    }
}
