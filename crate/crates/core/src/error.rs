use thiserror::Error;

/// Errors produced by the library and surfaced by the CLI as exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),

    #[error("parse error at line {line}, token {token}: {message}")]
    Parse {
        line: usize,
        token: usize,
        message: String,
    },

    #[error("oracle budget exceeded: {needed} diagonals exceed the budget of {budget}")]
    Budget { needed: String, budget: u64 },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    /// Process exit code used by the command-line front-end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation(_) => 1,
            Error::Parse { .. } | Error::Io(_) => 2,
            Error::Budget { .. } => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
