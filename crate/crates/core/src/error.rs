use std::fmt;

/// Why a computation was abandoned before it produced an answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResourceKind {
    DegreeGuard { degree: u32, cap: u32 },
    IterationCap { what: &'static str, cap: usize },
    Timeout,
    MatrixTooLarge { cells: usize, cap: usize },
}

impl fmt::Display for ResourceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResourceKind::DegreeGuard { degree, cap } => {
                write!(f, "intermediate degree {degree} exceeds guard {cap}")
            }
            ResourceKind::IterationCap { what, cap } => {
                write!(f, "{what} did not stabilize within {cap} iterations")
            }
            ResourceKind::Timeout => write!(f, "deadline exceeded"),
            ResourceKind::MatrixTooLarge { cells, cap } => {
                write!(f, "Macaulay matrix with {cells} cells exceeds cap {cap}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("zero polynomial has no {0}")]
    ZeroPolynomial(&'static str),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is too large (must be below 2^63)")]
    ModulusTooLarge(u64),
    #[error("field {field} has no element of multiplicative order {n}")]
    NoRootOfUnity { field: String, n: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("resource limit: {0}")]
    Resource(ResourceKind),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

impl Error {
    /// Resource aborts are reported as indeterminate verdicts, never as answers.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource(_))
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
