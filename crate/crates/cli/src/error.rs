//! CLI error split by exit code.
//!
//! Exit 1 means the user's inputs were rejected (arguments, manifest
//! structure, missing files, invalid configuration); exit 2 means inputs
//! looked sane but a file failed to decode, a computation failed, or an
//! output could not be written.

use std::fmt;

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments, manifest, or referenced inputs. Exit code 1.
    Input(String),
    /// Failure while processing or writing. Exit code 2.
    Processing(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn processing(msg: impl Into<String>) -> Self {
        CliError::Processing(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Processing(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) | CliError::Processing(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for CliError {}

impl From<absement::Error> for CliError {
    fn from(err: absement::Error) -> Self {
        use absement::Error::*;
        match err {
            // Problems with what the user specified.
            MissingFile { .. }
            | InvalidConfig(_)
            | UnsupportedRadius(_)
            | LengthMismatch { .. }
            | CoeffMismatch { .. }
            | EmptyInput(_)
            | InvalidTemplateLen(_)
            | InvalidInitIndex { .. }
            | DuplicateLabel(_)
            | EmptyLabel
            | UnknownLabel(_)
            | InvalidK { .. } => CliError::Input(err.to_string()),
            // Existing files that fail to decode, compute or write.
            MalformedWav { .. }
            | UnsupportedWav { .. }
            | MalformedFeat { .. }
            | Io { .. }
            | SignalTooShort { .. }
            | NonFinite(_) => CliError::Processing(err.to_string()),
            other => CliError::Processing(other.to_string()),
        }
    }
}
