use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed graph text; `line` is 1-based.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The instance is larger than an exhaustive routine is configured for.
    #[error("capability exceeded: {0}")]
    Capability(String),

    #[error("illegal move: vertex {vertex} covers no uncovered edge")]
    IllegalMove { vertex: usize },

    #[error("policy `{policy}` failed: {message}")]
    Policy { policy: String, message: String },

    #[error("usage: {0}")]
    Usage(String),

    #[error("graph generation failed: {0}")]
    Generation(String),

    #[error("internal inconsistency: {0}")]
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
