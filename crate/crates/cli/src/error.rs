//! Command-line error type and the stable exit-code contract.
//!
//! | code | meaning                                           |
//! |------|---------------------------------------------------|
//! | 0    | success, all checks passed                        |
//! | 2    | validation or parse failure (bad input data)      |
//! | 3    | a mathematical check ran and breached its bound   |
//! | 4    | I/O failure (unreadable input, unwritable output) |

use std::fmt;
use std::path::Path;

/// Exit code for validation and parse failures.
pub const EXIT_VALIDATION: i32 = 2;
/// Exit code for mathematical-check breaches.
pub const EXIT_BREACH: i32 = 3;
/// Exit code for I/O failures.
pub const EXIT_IO: i32 = 4;

/// Anything that aborts a command, tagged with how it must exit.
#[derive(Debug)]
pub enum CliError {
    /// Reading or writing a file failed.
    Io { path: String, source: std::io::Error },
    /// The scenario or config file is not syntactically valid.
    Parse { path: String, message: String },
    /// The input parsed but violates a structural invariant, or a flag
    /// value is unusable.
    Invalid(String),
    /// A mathematical check ran to completion and exceeded its bound.
    Breach(String),
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        Self::Io { path: path.display().to_string(), source }
    }

    pub fn parse(path: &Path, message: impl fmt::Display) -> Self {
        Self::Parse { path: path.display().to_string(), message: message.to_string() }
    }

    /// The process exit code this error maps to.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Io { .. } => EXIT_IO,
            Self::Parse { .. } | Self::Invalid(_) => EXIT_VALIDATION,
            Self::Breach(_) => EXIT_BREACH,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Io { path, source } => write!(f, "io error: {path}: {source}"),
            Self::Parse { path, message } => write!(f, "parse error: {path}: {message}"),
            Self::Invalid(message) => write!(f, "invalid input: {message}"),
            Self::Breach(message) => write!(f, "check failed: {message}"),
        }
    }
}

impl std::error::Error for CliError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Self::Io { source, .. } => Some(source),
            _ => None,
        }
    }
}

/// Library validation errors surface as exit-2 input problems; their
/// Display output already carries the stable code words
/// (`NESTING_VIOLATION`, `LEVEL_RANGE`, `NOT_A_SELECTION`, `NULL_SET`).
impl From<fuzzpettis_core::Error> for CliError {
    fn from(err: fuzzpettis_core::Error) -> Self {
        Self::Invalid(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
