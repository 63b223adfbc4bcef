use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("radius {0} is outside the domain r > 0")]
    Domain(f64),

    #[error("no classically allowed region at E = {energy}")]
    NoBoundRegion { energy: f64 },

    #[error("bracketing failed: {0}")]
    Bracketing(String),

    #[error("quadrature missed tolerance {tolerance:e}: estimate {estimate}, error {error:e}")]
    QuadratureTolerance {
        estimate: f64,
        error: f64,
        tolerance: f64,
    },

    #[error("phase integral diverges at the origin (centrifugal coefficient {coefficient} < 0)")]
    DivergentPhase { coefficient: f64 },

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("level solver failed for n = {n}: {reason}")]
    Solver { n: u32, reason: String },

    #[error("oracle domain too small for level {level}: tail ratio {tail_ratio:e} exceeds 1e-6")]
    DomainTooSmall { level: usize, tail_ratio: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("{what} = {value} outside tabulated range {range}")]
    Range {
        what: &'static str,
        value: u32,
        range: &'static str,
    },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

pub(crate) fn ensure_positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::invalid(
            name,
            format!("must be finite and > 0, got {value}"),
        ))
    }
}
