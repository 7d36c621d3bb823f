use std::fmt;

/// Errors surfaced by the library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A value does not belong to the tract instance an operation was asked
    /// to work in (e.g. a sign mixed into a phase computation).
    TractMismatch { expected: String, found: String },
    /// Inverse of zero, scaling by zero, and similar domain violations.
    Domain(String),
    /// Malformed textual input (value strings, files).
    Parse(String),
    /// Ground-set label problems: unknown labels, duplicates, empty sets.
    Ground(String),
    /// Circuit supports do not form the circuits of a matroid; carries the
    /// offending pair or element.
    NotAMatroid(String),
    /// Vector-level data fails a structural precondition (zero circuit,
    /// non-cocircuit key, inconsistent orthogonality propagation, ...).
    Structure(String),
    /// A map claimed to be a localization fails the axioms; carries the
    /// failing axiom id and a short witness description.
    NotALocalization { axiom: String, witness: String },
    /// An operation was invoked on a shape it does not support
    /// (e.g. rank-2 test on a matroid that is not uniform rank 2 on 3 elements).
    Shape(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::TractMismatch { expected, found } => {
                write!(f, "tract mismatch: expected {expected}, found {found}")
            }
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::Ground(msg) => write!(f, "ground set error: {msg}"),
            Error::NotAMatroid(msg) => write!(f, "not a matroid: {msg}"),
            Error::Structure(msg) => write!(f, "structure error: {msg}"),
            Error::NotALocalization { axiom, witness } => {
                write!(f, "not a localization: axiom {axiom} fails at {witness}")
            }
            Error::Shape(msg) => write!(f, "shape error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
