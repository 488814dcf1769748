use thiserror::Error;

/// Failure modes shared by every numeric routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QError {
    #[error("truncation cap of {cap} terms exceeded")]
    TruncationExceeded { cap: usize },
    #[error("pole in denominator: parameter {index} vanishes at term {order}")]
    PoleInDenominator { index: usize, order: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("quadrature not converged with {nodes} nodes (last change {change:e})")]
    QuadratureNotConverged { nodes: usize, change: f64 },
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("non-finite value produced by {0}")]
    NonFinite(&'static str),
}

pub type Result<T> = std::result::Result<T, QError>;

impl QError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        QError::Domain(msg.into())
    }
}
