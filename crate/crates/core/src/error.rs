use thiserror::Error;

/// Errors raised by the exact-arithmetic kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A 3-adic computation could not certify a digit at the working precision.
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    /// A bounded search hit its cap.
    #[error("cap exceeded: {what} (cap {cap})")]
    CapExceeded { what: String, cap: usize },
    /// The parameters are not of the shape the operation supports.
    #[error("family shape error: {0}")]
    FamilyShape(String),
    /// Malformed textual or JSON input.
    #[error("parse error: {0}")]
    Parse(String),
    /// An invariant that should hold by construction failed.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub(crate) fn precision(msg: impl Into<String>) -> Self {
        Error::PrecisionExhausted(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
