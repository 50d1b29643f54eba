use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid potential: {}", .0.join("; "))]
    InvalidPotential(Vec<String>),

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("invalid settings: {0}")]
    InvalidSettings(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("particles {i} and {j} coincide under a potential that is singular at the origin")]
    SingularPair { i: usize, j: usize },

    #[error("time step fell below the minimum {dt_min:e}")]
    StepUnderflow { dt_min: f64 },

    #[error("non-finite state encountered: {0}")]
    NonFinite(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
