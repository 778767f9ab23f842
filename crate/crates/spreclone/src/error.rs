use std::fmt;

use thiserror::Error;

/// A single violated monoid axiom, reported by element name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonoidViolation {
    DuplicateElement(String),
    MalformedTable,
    BadUnit(String),
    NonAssociative(String, String, String),
}

impl fmt::Display for MonoidViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidViolation::DuplicateElement(x) => write!(f, "duplicate element name {x:?}"),
            MonoidViolation::MalformedTable => write!(f, "table is not |S| x |S| with valid entries"),
            MonoidViolation::BadUnit(x) => write!(f, "unit law fails at {x:?}"),
            MonoidViolation::NonAssociative(a, b, c) => {
                write!(f, "associativity fails at ({a:?}, {b:?}, {c:?})")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid monoid: {}", format_violations(.0))]
    InvalidMonoid(Vec<MonoidViolation>),
    #[error("unknown builtin monoid {0:?}")]
    UnknownBuiltin(String),
    #[error("unknown monoid element {0:?}")]
    UnknownElement(String),
    #[error("monoid has {0} elements, more than the supported 16")]
    MonoidTooLarge(usize),
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("domain size mismatch: {0} vs {1}")]
    DomainMismatch(usize, usize),
    #[error("signum entry at the essential position must be the unit")]
    BadSignum,
    #[error("row index {0} out of range for arity {1}")]
    BadRowIndex(usize, usize),
    #[error("self-intersection family violates condition (*)")]
    InvalidFamily,
    #[error("malformed diagonal partition")]
    BadPartition,
    #[error("required arity {required} exceeds cap {cap}")]
    ArityCapExceeded { required: usize, cap: usize },
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("fragment did not saturate at arity {0}; result would be unsound")]
    Unsaturated(usize),
    #[error("operation unsupported for domain size {0}")]
    UnsupportedDomain(usize),
    #[error("malformed value: {0}")]
    Malformed(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

fn format_violations(vs: &[MonoidViolation]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
