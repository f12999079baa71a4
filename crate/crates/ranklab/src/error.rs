use thiserror::Error;

/// Errors produced by table construction, series arithmetic, and numerical
/// evaluation.
#[derive(Debug, Error)]
pub enum Error {
    /// Arithmetic on series with different truncation orders. Mixed-order
    /// arithmetic is always an error, never a silent re-truncation.
    #[error("truncation orders differ: {lhs} vs {rhs}")]
    TruncationMismatch { lhs: usize, rhs: usize },

    /// A parameter is outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// An evaluation point is too close to a pole of the series being summed.
    #[error("near-pole input rejected: {0}")]
    NearPole(String),

    /// The requested tolerance cannot be certified at the working precision.
    #[error("precision unattainable: {0}")]
    Precision(String),

    /// Quadrature failed to converge within the level budget.
    #[error("quadrature did not converge: last refinement changed result by {last_delta:e} (tolerance {tol:e})")]
    QuadratureNotConverged { last_delta: f64, tol: f64 },

    /// The quadrature tail bound cannot be satisfied by the configured
    /// truncation point.
    #[error("quadrature tail bound unsatisfiable at X = {configured}; requires X >= {required}")]
    QuadratureTail { configured: f64, required: f64 },

    /// A two-route comparison exceeded its tolerance.
    #[error("check failed: {0}")]
    CheckFailed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
