use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    #[error("parse error at line {line}, column {column} (field `{field}`): {message}")]
    Parse { line: usize, column: usize, field: String, message: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Core(#[from] outage_core::error::Error),

    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    /// Process exit code: 2 for bad input, 3 for numerical failure, 1 for I/O.
    pub fn exit_code(&self) -> i32 {
        use outage_core::error::Error as E;
        match self {
            CliError::Parse { .. } | CliError::Invalid(_) => 2,
            CliError::Core(E::InvalidParameter(_) | E::Unsupported(_)) => 2,
            CliError::Core(E::NumericFailure { .. } | E::Domain(_) | E::ModelInconsistency(_)) => 3,
            CliError::Io(_) => 1,
        }
    }
}
