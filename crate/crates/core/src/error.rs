use thiserror::Error;

/// Errors raised by parsing, precondition checks and the evaluators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("brute-force guard: {needed} assignments exceed cap {cap}")]
    CapExceeded { needed: String, cap: u64 },

    #[error("singular interpolation system")]
    Singular,

    #[error("inconsistent observations: {0}")]
    Inconsistent(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
