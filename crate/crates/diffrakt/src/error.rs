//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature did not converge after {subdivisions} subdivisions (partial estimate {partial:.17e}, error estimate {error_estimate:.3e})")]
    QuadratureNonConvergence {
        partial: f64,
        error_estimate: f64,
        subdivisions: usize,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("sampling budget exceeded: {0}")]
    Budget(String),

    #[error("discretization too coarse: {0}")]
    Discretization(String),

    #[error("linear algebra failure: {0}")]
    Linalg(String),

    #[error("conditioning failure: {0}")]
    Conditioning(String),

    #[error("unsupported kernel family for this operation: {0}")]
    UnsupportedFamily(String),

    #[error("argument out of supported range: {0}")]
    OutOfRange(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Exit code contract: 0 success, 2 config error, 3 numeric failure,
    /// 4 verification failure (the latter is produced by the CLI directly).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 2,
            _ => 3,
        }
    }
}
