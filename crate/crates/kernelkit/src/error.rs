use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A point (or rule, or map) does not belong to the region an operation requires.
    #[error("domain error: {0}")]
    Domain(String),

    /// Evaluation within 1e-13 of a kernel singularity.
    #[error("pole: {0}")]
    Pole(String),

    /// An integrand produced NaN or infinity at a quadrature node.
    #[error("non-finite integrand value at node {index}")]
    NonFiniteSample { index: usize },

    /// Gram-Schmidt pivot collapsed: the inputs are numerically dependent.
    #[error("numerically dependent input at index {index}")]
    DependentInput { index: usize },

    /// A constructed value failed one of its own invariants.
    #[error("invariant violation: {0}")]
    Invariant(String),

    /// Levi-form tangency precondition failed.
    #[error("tangency violated: residual {residual:e}")]
    Tangency { residual: f64 },

    /// Malformed external input (CLI point syntax, CSV layout, ...).
    #[error("input format: {0}")]
    Format(String),

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
