//! Command-line front end: instance files, JSON reports, verification suites and
//! benchmarks.

pub mod bench;
pub mod commands;
pub mod report;
pub mod suites;

use std::path::Path;

pub use commands::{run, Cli, ORACLE_CAP_ENV};

/// Process exit codes.
pub mod exit {
    /// Success, feasible, or kernelized.
    pub const OK: i32 = 0;
    /// Discrepancy, verification failure, or any other error.
    pub const FAILURE: i32 = 1;
    pub const USAGE: i32 = 2;
    /// A size guard refused the request.
    pub const GUARD: i32 = 3;
    /// Decided no-instance or infeasible.
    pub const NO: i32 = 10;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Guard(String),
    #[error("{0}: {1}")]
    Input(String, diamond_kernel::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] diamond_kernel::Error),
}

impl CliError {
    pub(crate) fn io(path: impl AsRef<Path>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Guard(_) | CliError::Core(diamond_kernel::Error::OracleCap { .. }) => {
                exit::GUARD
            }
            CliError::Core(diamond_kernel::Error::InvalidParameter(m))
                if m.contains("dense limit") =>
            {
                exit::GUARD
            }
            _ => exit::FAILURE,
        }
    }
}
