use thiserror::Error;

/// Errors produced by the trace engine, the filters and the search drivers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty word")]
    EmptyWord,

    #[error("invalid character {0:?} in word (expected 1, 2 or 3)")]
    InvalidDigit(char),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported modulus {0} (only 2 and 4 are supported)")]
    UnsupportedModulus(u32),

    #[error("integer overflow in fixed-width ℤ[√2] arithmetic")]
    Overflow,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("checkpoint error: {0}")]
    Checkpoint(String),

    #[error("checkpoint version mismatch: found {found}, expected {expected}")]
    CheckpointVersion { found: u64, expected: u32 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Overflow => 4,
            Error::Checkpoint(_) | Error::CheckpointVersion { .. } | Error::Io(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
