//! Crate-wide error type.

use std::fmt;

/// Errors produced by data ingestion, encoding, and the numerical routines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// File could not be opened or read.
    Io(String),
    /// Input data is malformed (CSV structure, tokens, labels). Carries
    /// file/line context where it is known.
    Data(String),
    /// An argument violates an operation's contract (counts out of range,
    /// length mismatches, unknown names).
    InvalidArgument(String),
    /// A numerical precondition failed (singular matrix, zero variance).
    Numerical(String),
    /// An enumeration guard was exceeded.
    GuardExceeded(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Io(msg) => write!(f, "io error: {msg}"),
            Error::Data(msg) => write!(f, "data error: {msg}"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::Numerical(msg) => write!(f, "numerical error: {msg}"),
            Error::GuardExceeded(msg) => write!(f, "guard exceeded: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
