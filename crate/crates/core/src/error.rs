//! Error types shared across the crate.

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument fell outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series hit its hard term cap before the truncation rule fired.
    /// The partial sum is attached so callers can inspect it.
    #[error("series did not converge after {terms} terms (partial value {partial:e})")]
    ConvergenceFailure { partial: f64, terms: usize },

    /// A computed value violated a bound it must satisfy analytically.
    #[error("numerical inconsistency: {0}")]
    NumericalInconsistency(String),

    /// Adaptive quadrature exhausted its subdivision budget.
    #[error("quadrature did not converge (estimate {estimate:e}, error bound {error:e})")]
    QuadratureNonconvergence { estimate: f64, error: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
