use thiserror::Error;

use bnor_core::{EnetError, GateError, OracleError, ReliabilityError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read `{path}`: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid input: {0}")]
    Format(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Gate(#[from] GateError),
    #[error(transparent)]
    Model(#[from] EnetError),
    #[error(transparent)]
    Reliability(#[from] ReliabilityError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    /// 2 for anything wrong with the input itself, 1 for errors raised while
    /// computing on valid input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Syntax { .. } | CliError::Format(_) | CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}
