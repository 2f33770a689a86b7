use thiserror::Error;
use tunnelbp::BpError;

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Model(#[from] BpError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{failed} of {total} rows failed the consistency check")]
    Inconsistent { failed: usize, total: usize },
}

impl CliError {
    /// Process exit status: 2 for bad input, 3 for a failed consistency
    /// check, 1 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Invalid(_) | CliError::Model(_) => 2,
            CliError::Inconsistent { .. } => 3,
            CliError::Io(_) => 1,
        }
    }
}
