//! Crate-wide error type and exit-code mapping.

use thiserror::Error;

/// Errors raised by parsing, validation, resource caps and internal audits.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed textual input (DFA file or regular expression).
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    /// A precondition on the input was violated.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// Two automata over different alphabets were combined.
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    /// A configured resource limit was exceeded. Never silently truncated.
    #[error("resource cap exceeded: {what} ({detail})")]
    CapExceeded { what: &'static str, detail: String },

    /// An operation that requires a group language was given something else.
    #[error("not a group language: {0}")]
    NotGroupLanguage(String),

    /// A monoid-level operation that requires a group was given a non-group monoid.
    #[error("not a group: {0}")]
    NotGroup(String),

    /// An operation that requires an aperiodic syntactic monoid was given something else.
    #[error("not a star-free language: {0}")]
    NotStarFree(String),

    /// The sandwich construction was asked to approximate a language whose
    /// kernel has a nontrivial H-class; the per-fiber construction does not apply.
    #[error("kernel is not H-trivial: nontrivial H-class {{{}}}", h_class.join(", "))]
    ImmeasurableKernel { h_class: Vec<String> },

    /// An internal audit failed; indicates a bug or a regression.
    #[error("internal assertion failed: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn parse(location: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: msg.into(),
        }
    }

    pub(crate) fn cap(what: &'static str, detail: impl Into<String>) -> Self {
        Error::CapExceeded {
            what,
            detail: detail.into(),
        }
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// Process exit code for the CLI: 1 input/validation, 2 resource cap, 3 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded { .. } => 2,
            Error::Internal(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
