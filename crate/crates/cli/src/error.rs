// SPDX-License-Identifier: MIT OR Apache-2.0

use std::process::ExitCode;

/// Failures mapped onto the process exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags, bad configuration values or an invalid study plan.
    #[error("{0}")]
    Usage(String),
    /// Unreadable or malformed input, or an unwritable output.
    #[error("{0}")]
    Data(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(64),
            CliError::Data(_) => ExitCode::from(2),
        }
    }
}

impl CliError {
    pub fn usage(e: impl std::fmt::Display) -> Self {
        CliError::Usage(e.to_string())
    }

    pub fn data(e: impl std::fmt::Display) -> Self {
        CliError::Data(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}
