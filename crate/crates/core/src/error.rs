use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{field} must be finite and strictly positive, got {value}")]
    NonPositive { field: &'static str, value: f64 },

    #[error("Landau index must be non-negative, got n = {0}")]
    NegativeLandauIndex(i64),

    #[error("invalid quantum numbers (n = {n}, m = {m}): need n >= 0 and m <= n")]
    InvalidQuantumNumbers { n: i64, m: i64 },

    #[error("Laguerre argument must be finite and non-negative, got {0}")]
    InvalidLaguerreArgument(f64),

    #[error("radial coordinate must be finite and non-negative, got {0}")]
    InvalidRadius(f64),

    #[error("quadrature order must be at least 1, got {0}")]
    InvalidQuadratureOrder(usize),

    #[error("Fock cutoff must be at least {min}, got {cutoff}")]
    CutoffTooSmall { cutoff: usize, min: usize },

    #[error("interior margin must satisfy 0 < margin < cutoff (margin = {margin}, cutoff = {cutoff})")]
    InvalidMargin { cutoff: usize, margin: usize },

    #[error("state |n_a = {n_a}, n_b = {n_b}> lies outside the interior block (n_a + n_b <= {limit})")]
    OutsideInterior { n_a: usize, n_b: usize, limit: usize },

    #[error("the canonical OAM has no classical counterpart without a gauge potential")]
    CanonicalClassical,

    #[error("time step must be finite and positive, got {0}")]
    InvalidTimeStep(f64),

    #[error("time average needs at least {min} samples, got {samples}")]
    TooFewSamples { samples: usize, min: usize },

    #[error("invalid run configuration: {0}")]
    InvalidRun(String),
}

pub type Result<T> = std::result::Result<T, Error>;
