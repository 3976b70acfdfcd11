use thiserror::Error;

/// Errors raised by evaluation, oracles and checkers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point with norm {norm:e} lies inside the excluded ball of radius {r_min:e}")]
    ZeroPoint { norm: f64, r_min: f64 },

    #[error("u = {u} is not positive; the shift constant is too small")]
    NonPositiveU { u: f64 },

    #[error("normalized cubic value {value} lies outside [-1, 1]")]
    RangeViolation { value: f64 },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NonConvergence { sweeps: usize },

    #[error("derivative undefined: {0}")]
    DomainError(String),

    #[error("at least one sample is required")]
    InsufficientSamples,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
