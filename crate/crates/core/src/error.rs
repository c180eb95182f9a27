use thiserror::Error;

/// Errors raised by evaluations and checks.
///
/// Non-convergence is not an error: it is reported through the `converged`
/// flag on [`crate::QuadratureResult`] and [`crate::Evaluation`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("integrand is not finite at t = {t:e}")]
    InvalidIntegrand { t: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
