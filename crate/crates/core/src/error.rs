use std::fmt;

use thiserror::Error;

/// A single constraint violation, located by its position in the input.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub location: String,
    pub message: String,
}

impl Violation {
    pub fn new(location: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            location: location.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid BUI <{datum};{certainty}>: datum and certainty must lie in [0, 1]")]
    InvalidBui { datum: f64, certainty: f64 },

    #[error("invalid interval [{lower}, {upper}]: {reason}")]
    InvalidInterval {
        lower: f64,
        upper: f64,
        reason: &'static str,
    },

    #[error("invalid extended BUI: {0}")]
    InvalidExtended(String),

    #[error("invalid weight vector: {0}")]
    InvalidWeights(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("arity mismatch: expected {expected} inputs, got {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("value {value} at position {position} is outside [0, 1]")]
    OutOfDomain { position: usize, value: f64 },

    #[error("index {index} out of range for {len} alternatives")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("empty ranking")]
    EmptyRanking,

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation failed:\n{}", render_violations(.0))]
    Validation(Vec<Violation>),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

fn render_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| format!("  {v}"))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Broad failure classes, used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Parse,
    Validate,
    Internal,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Parse(_) | Error::Io { .. } => ErrorClass::Parse,
            Error::InvalidBui { .. }
            | Error::InvalidInterval { .. }
            | Error::InvalidExtended(_)
            | Error::InvalidWeights(_)
            | Error::InvalidParams(_)
            | Error::ArityMismatch { .. }
            | Error::OutOfDomain { .. }
            | Error::IndexOutOfRange { .. }
            | Error::EmptyRanking
            | Error::Empty(_)
            | Error::Validation(_) => ErrorClass::Validate,
            Error::Internal(_) => ErrorClass::Internal,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
