use std::process::ExitCode;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flag values, unreadable or malformed input.
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Core(#[from] uqgl21::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_NUMERIC: u8 = 3;

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        use uqgl21::Error as E;
        ExitCode::from(match self {
            CliError::Input(_) | CliError::Io(_) => EXIT_INPUT,
            CliError::Core(E::Config(_) | E::Domain(_) | E::Json(_)) => EXIT_INPUT,
            // two independent computations disagree
            CliError::Core(E::Consistency(_)) => EXIT_FAIL,
            CliError::Core(E::Numeric(_)) => EXIT_NUMERIC,
        })
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
