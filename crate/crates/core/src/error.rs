use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("precision must be at least 1")]
    ZeroPrecision,

    #[error("scalar has negative valuation {0}")]
    NegativeValuation(i64),

    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeOverflow { degree: u32, cap: u32 },

    #[error("the zero element has no filtration degree")]
    ZeroElement,

    #[error("expected a form of degree {expected}, found degree {found}")]
    WrongDegree { expected: usize, found: usize },

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("homology is not stable: {at_d:?} at truncation {d} but {at_padded:?} at {padded}")]
    Unstable {
        d: u32,
        padded: u32,
        at_d: (usize, usize),
        at_padded: (usize, usize),
    },

    #[error("connection is not compatible with the relations: {0}")]
    InvalidConnection(String),

    #[error("matrix is not idempotent modulo p")]
    NotApproxIdempotent,

    #[error("bad reduction: p = {p} divides the discriminant of f")]
    BadReduction { p: u64 },

    #[error("growth certificate violated at index {index}")]
    CertificateViolated { index: i64 },

    #[error("results disagree: {0}")]
    Mismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
