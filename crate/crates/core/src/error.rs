use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("epsilon must lie in (0, 1), got {0}")]
    EpsilonOutOfRange(f64),

    #[error("zeta is only evaluated for real sigma > 1, got {0}")]
    ZetaDomain(f64),

    #[error("zeta tolerance {tolerance:e} unreachable at sigma = {sigma} (cutoff {cutoff})")]
    ZetaTolerance { sigma: f64, tolerance: f64, cutoff: u64 },

    #[error("index must be >= 1, got ({m}, {n})")]
    InvalidIndex { m: u64, n: u64 },

    #[error("coefficient {index} is not finite")]
    NonFiniteCoefficient { index: usize },

    #[error("vector length {found} does not match operator dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {0} is too large to densify")]
    TooLargeToDensify(usize),

    #[error(
        "power iteration did not converge: residual {residual:e} > {tolerance:e} after {iterations} iterations"
    )]
    NotConverged { iterations: usize, residual: f64, tolerance: f64 },

    #[error(
        "tail bound {tail_bound:e} exceeds tolerance {tolerance:e} at truncation height {truncation_height}; raise the truncation height"
    )]
    TailBoundExceeded { tail_bound: f64, tolerance: f64, truncation_height: f64 },

    #[error("invalid quadrature rule: {0}")]
    InvalidRule(String),

    #[error("grid must be {0}")]
    InvalidGrid(&'static str),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn ensure_positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::NonPositive { name, value })
    }
}
