use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a squarefree integer >= 2")]
    NotSquarefree(u64),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not in the field")]
    FieldMismatch,
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("budget exceeded: {what} needs more than {limit}")]
    BudgetExceeded { what: String, limit: u64 },
    #[error("degenerate cone {0}")]
    DegenerateCone(String),
    #[error("verification failed: {0}")]
    Mismatch(String),
}

impl Error {
    pub fn budget(what: impl Into<String>, limit: u64) -> Self {
        Error::BudgetExceeded {
            what: what.into(),
            limit,
        }
    }
}
