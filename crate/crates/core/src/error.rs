use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("point {0} is not a member of the image")]
    PointNotInImage(String),

    #[error("invalid image: {0}")]
    InvalidImage(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("{what}: cap of {cap} exceeded after {partial} items")]
    CapExceeded {
        what: &'static str,
        cap: usize,
        partial: usize,
    },

    #[error("not a chain complex: boundary composition is nonzero")]
    NotAChainComplex,

    #[error("chain-map condition fails at {witness}")]
    ChainMapViolation { witness: String },

    #[error("domain or codomain mismatch between maps")]
    DomainMismatch,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
