use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: u32,
        column: u32,
        message: String,
    },

    #[error("inconsistent catalog at line {line}: {message}")]
    Consistency { line: u32, message: String },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid bundle specification: {0}")]
    Spec(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    /// Stable short identifier, used in machine-readable output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "ParseError",
            Error::Consistency { .. } => "ConsistencyError",
            Error::UnknownGenerator(_) => "UnknownGenerator",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::Spec(_) => "SpecError",
            Error::Precondition(_) => "PreconditionError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
