use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation (zero where
    /// positivity is needed, modulus outside [0, 1), ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A malformed parameter or descriptor string.
    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("no convergence: {0}")]
    NonConvergence(String),

    #[error("no sign change found in [{lo}, {hi}]")]
    Bracket { lo: f64, hi: f64 },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}
