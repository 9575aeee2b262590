//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by the statistical library.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// An argument violated a mathematical precondition (bad α, θ₀ outside
    /// the support closure, nonpositive shape, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Observed data violated the scenario's support or was otherwise unusable.
    #[error("data error: {0}")]
    Data(String),

    /// The operation is not defined for the posterior's shape class.
    #[error("capability error: {0}")]
    Capability(String),

    /// An iterative routine failed to converge.
    #[error("numerical error: {0}")]
    Numerical(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn data(msg: impl Into<String>) -> Self {
        Error::Data(msg.into())
    }

    pub fn capability(msg: impl Into<String>) -> Self {
        Error::Capability(msg.into())
    }

    pub fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
