use exlie_field::FieldError;
use exlie_linalg::LinalgError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExlieError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("unsupported Cartan type {0:?}")]
    UnsupportedType(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("element is not extremal")]
    NotExtremal,
    #[error("no extremal elements found among the candidates")]
    NoExtremal,
    #[error("not applicable: {reason}")]
    Inapplicable { reason: String },
    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl ExlieError {
    pub fn inapplicable(reason: impl Into<String>) -> Self {
        ExlieError::Inapplicable { reason: reason.into() }
    }

    pub fn verification(what: impl Into<String>) -> Self {
        ExlieError::Verification(what.into())
    }
}

pub type Result<T, E = ExlieError> = std::result::Result<T, E>;
