use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element or label does not belong to group kind {0}")]
    KindMismatch(&'static str),
    #[error("operands live on different group models")]
    GroupMismatch,
    #[error("irrep label {0} is outside the dual object of this model")]
    LabelOutOfRange(String),
    #[error("result needs {needed} but the model cutoff is {cutoff}")]
    CutoffOverflow { needed: String, cutoff: String },
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
