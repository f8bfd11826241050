use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{line}:{column}: predicate {predicate} used with arity {found}, previously {expected}")]
    ArityMismatch {
        predicate: String,
        expected: usize,
        found: usize,
        line: usize,
        column: usize,
    },

    #[error("{line}:{column}: fact for {predicate} contains variable {variable}")]
    NonGroundFact {
        predicate: String,
        variable: String,
        line: usize,
        column: usize,
    },

    #[error("{line}:{column}: head variable {variable} does not occur in the rule body")]
    UnrestrictedHead {
        variable: String,
        line: usize,
        column: usize,
    },

    #[error("unknown predicate {0}")]
    UnknownPredicate(String),

    #[error("relation {relation}: tuple of arity {found} where {expected} was expected")]
    TupleArity {
        relation: String,
        expected: usize,
        found: usize,
    },

    #[error("{perm:?} is not a permutation of 0..{arity}")]
    InvalidPermutation { perm: Vec<usize>, arity: usize },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

impl Error {
    /// I/O-level failures, as opposed to malformed input.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io { .. })
            || matches!(self, Error::Csv { source, .. } if source.is_io_error())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
