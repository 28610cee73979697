//! Experiment harness for the quantum perceptron simulator: sweep and
//! histogram drivers, report formatting, dataset loading, and the `qperc`
//! command-line interface.

use std::fmt;

pub mod cli;
pub mod dataset;
pub mod experiments;
pub mod report;

/// Error type for harness operations.
#[derive(Debug)]
pub enum HarnessError {
    Core(qperc_core::Error),
    Io(std::io::Error),
    Csv(csv::Error),
    /// A malformed dataset row; `line` is 1-based within the file.
    Dataset { line: u64, message: String },
    /// A request that is wrong before any work starts (bad flag values,
    /// impossible experiment configuration). The CLI reports these as usage
    /// errors.
    Invalid(String),
}

impl HarnessError {
    /// True for errors the CLI should report as usage (exit code 2) rather
    /// than runtime failures (exit code 1).
    pub fn is_usage(&self) -> bool {
        matches!(self, HarnessError::Invalid(_))
    }

    pub fn invalid(message: impl Into<String>) -> HarnessError {
        HarnessError::Invalid(message.into())
    }
}

impl fmt::Display for HarnessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HarnessError::Core(e) => write!(f, "{e}"),
            HarnessError::Io(e) => write!(f, "{e}"),
            HarnessError::Csv(e) => write!(f, "{e}"),
            HarnessError::Dataset { line, message } => {
                write!(f, "dataset line {line}: {message}")
            }
            HarnessError::Invalid(message) => write!(f, "{message}"),
        }
    }
}

impl std::error::Error for HarnessError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            HarnessError::Core(e) => Some(e),
            HarnessError::Io(e) => Some(e),
            HarnessError::Csv(e) => Some(e),
            _ => None,
        }
    }
}

impl From<qperc_core::Error> for HarnessError {
    fn from(e: qperc_core::Error) -> HarnessError {
        HarnessError::Core(e)
    }
}

impl From<std::io::Error> for HarnessError {
    fn from(e: std::io::Error) -> HarnessError {
        HarnessError::Io(e)
    }
}

impl From<csv::Error> for HarnessError {
    fn from(e: csv::Error) -> HarnessError {
        HarnessError::Csv(e)
    }
}
