use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("field {0} exceeds the supported size (q must stay below 2^32)")]
    FieldTooLarge(String),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("element does not lie in the subfield")]
    NotInSubfield,
    #[error("enumerating {0} elements exceeds the limit of {1}")]
    EnumerationTooLarge(u64, u64),
    #[error("equal-degree splitting failed after {0} attempts")]
    SplittingFailed(u32),
    #[error("discriminant vanishes (inseparable polynomial)")]
    ZeroDiscriminant,
    #[error("interpolated coefficient does not descend to the base field")]
    Descent,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("malformed input: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
