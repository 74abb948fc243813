use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("modulus {0} is too small (need an odd prime p >= 3)")]
    ModulusTooSmall(u64),

    #[error("modulus {p} exceeds the supported cap {cap}")]
    ModulusTooLarge { p: u64, cap: u64 },

    #[error("{value} is not a nonzero square modulo {p}")]
    NonResidue { value: u64, p: u64 },

    #[error("{what} requires {min} or more, got {got}")]
    HypothesisViolated {
        what: &'static str,
        min: u64,
        got: u64,
    },

    #[error("point count {n1} over F_{p} violates the Hasse bound")]
    HasseViolation { n1: u64, p: u64 },

    #[error("field of size {q} exceeds the direct counting cap {cap}")]
    CapExceeded { q: u64, cap: u64 },

    #[error("unsupported extension degree {0}")]
    UnsupportedDegree(u32),

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("cross-ratio condition failed: {0}")]
    ConditionFailed(String),

    #[error("division by zero: {0}")]
    DivisionByZero(&'static str),

    #[error("invalid parameters: {0}")]
    Validation(ValidationErrors),

    #[error("count mismatch over F_{q}: quotient curves give {quotients}, elliptic factors give {factors}")]
    DecompositionMismatch {
        q: u64,
        quotients: i64,
        factors: i64,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// One violated invariant of a genus-5 parameter tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Two of the eight branch points coincide.
    Degenerate {
        first: &'static str,
        second: &'static str,
    },
    /// A twist scalar is zero.
    ZeroTwist(&'static str),
    /// Cross-ratio equality number 1 or 2 does not hold.
    CrossRatioFailed(u8),
    /// `a(a - b)` or `a(a - c)` is not a nonzero square.
    NonSquareObstruction(&'static str),
    /// A factor curve would have lambda in {0, 1} or theta = 0.
    DegenerateLambda { index: usize, detail: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Degenerate { first, second } => {
                write!(f, "Degenerate: {first} = {second}")
            }
            Violation::ZeroTwist(name) => write!(f, "Degenerate: {name} = 0"),
            Violation::CrossRatioFailed(which) => {
                write!(f, "CrossRatioFailed: condition {which} does not hold")
            }
            Violation::NonSquareObstruction(what) => {
                write!(f, "NonSquareObstruction: {what} is not a nonzero square")
            }
            Violation::DegenerateLambda { index, detail } => {
                write!(f, "DegenerateLambda: factor E{index}: {detail}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationErrors(pub Vec<Violation>);

impl ValidationErrors {
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Violation> {
        self.0.iter()
    }
}

impl fmt::Display for ValidationErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationErrors {}
