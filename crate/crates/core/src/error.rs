use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A dense object would exceed one of the limits in [`crate::limits`].
    #[error("size guard `{guard}` exceeded: {detail}")]
    SizeGuard { guard: &'static str, detail: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("index {index} outside 1..={k}")]
    IndexOutOfRange { index: usize, k: usize },

    #[error("invalid input: {0}")]
    Invalid(String),

    /// Parameters outside the regime in which a threshold formula holds.
    #[error("regime violation: {0}")]
    Regime(String),

    /// An internal cross-check disagreed.
    #[error("verification failed: {0}")]
    Verification(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
