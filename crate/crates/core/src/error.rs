use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An input is larger than the configured limit of an exact algorithm.
    #[error("{what} exceeds the cap of {cap}")]
    Size { what: String, cap: usize },

    /// The parameters fall outside the regime where the operation is defined.
    #[error("regime error: {0}")]
    Regime(String),

    /// The input violates a structural requirement (for instance, not an up-set).
    #[error("structure error: {0}")]
    Structure(String),

    /// A value does not satisfy the invariants of its type.
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn size(what: impl Into<String>, cap: usize) -> Self {
        Error::Size { what: what.into(), cap }
    }

    pub(crate) fn regime(msg: impl Into<String>) -> Self {
        Error::Regime(msg.into())
    }

    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        Error::Parse { input: input.to_string(), reason: reason.into() }
    }
}
