use thiserror::Error;

/// Errors produced by the outage library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A caller-supplied parameter violates a precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A special function was evaluated outside its domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical procedure failed to reach its tolerance.
    #[error("numeric failure in {context}: {detail}")]
    NumericFailure { context: String, detail: String },

    /// The requested combination is not supported by the chosen method.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A fading model is internally inconsistent (e.g. a CDF leaves [0, 1]).
    #[error("model inconsistency: {0}")]
    ModelInconsistency(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn numeric(context: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::NumericFailure {
            context: context.into(),
            detail: detail.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
