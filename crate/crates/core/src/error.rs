use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument violates a documented precondition.
    #[error("invalid parameter: {0}")]
    Domain(String),

    /// An iterative or adaptive method stopped before reaching its tolerance.
    /// `value` is the last estimate and `error` its estimated error.
    #[error("{what} did not converge (estimate {value:e}, error estimate {error:e}): {detail}")]
    NonConvergence {
        what: &'static str,
        value: f64,
        error: f64,
        detail: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn is_domain(&self) -> bool {
        matches!(self, Error::Domain(_))
    }
}
