use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: node id {node} out of range 1..={n}")]
    NodeOutOfRange { line: usize, node: u64, n: usize },

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("shape mismatch: expected {expected}, got {got}")]
    Shape { expected: usize, got: usize },

    #[error("non-finite value at iteration {iteration} in batch member {member}")]
    NumericOverflow { iteration: usize, member: usize },

    #[error("instance too large: {what} = {value} exceeds the limit of {limit}")]
    SizeGuard {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn check_len(expected: usize, got: usize) -> Result<()> {
        if expected == got {
            Ok(())
        } else {
            Err(Error::Shape { expected, got })
        }
    }

    /// True for failures caused by floating-point blow-up rather than bad input.
    pub fn is_numeric(&self) -> bool {
        matches!(self, Error::NumericOverflow { .. })
    }
}
