use std::fmt;

use crate::doc::ErrorDoc;

/// Failure of a command. Usage errors exit with 1, everything else with 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Domain { kind: String, message: String },
}

impl CliError {
    pub fn domain(kind: &str, message: impl Into<String>) -> Self {
        CliError::Domain { kind: kind.to_string(), message: message.into() }
    }

    pub fn malformed(message: impl Into<String>) -> Self {
        CliError::domain("malformed_input", message)
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Domain { .. } => 2,
        }
    }

    pub fn to_doc(&self) -> ErrorDoc {
        match self {
            CliError::Usage(m) => ErrorDoc { kind: "usage".into(), message: m.clone() },
            CliError::Domain { kind, message } => ErrorDoc { kind: kind.clone(), message: message.clone() },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Domain { kind, message } => write!(f, "{kind}: {message}"),
        }
    }
}

impl From<masslin::Error> for CliError {
    fn from(e: masslin::Error) -> Self {
        CliError::domain(e.kind(), e.to_string())
    }
}
