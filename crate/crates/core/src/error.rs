use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("Levi-Tanaka algebra invariant violated: {0}")]
    Algebra(String),
    #[error("sequencing error: {0}")]
    Sequencing(String),
    #[error("prolongation did not terminate below degree cap {0}")]
    Nontermination(usize),
    #[error("element is not in degree {0}")]
    Degree(i32),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("undefined: {0}")]
    Undefined(String),
    #[error("internal assertion failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code: 1 domain failure, 2 parse error, 3 internal assertion.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Io(_) => 2,
            Error::Internal(_) | Error::Nontermination(_) => 3,
            _ => 1,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
