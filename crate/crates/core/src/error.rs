use thiserror::Error;

use crate::sysio::ParseError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("expected {expected} parameter values, got {got}")]
    WrongAlphaLength { expected: usize, got: usize },

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,

    #[error("polynomial must have degree at least 1")]
    ConstantPolynomial,

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("no separable candidate c in 1..={bound}")]
    NoSeparableCandidate { bound: u64 },

    #[error("degenerate compositum: the generators share a root, so the extension degree is below {expected}")]
    DegenerateCompositum { expected: usize },

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("range contains {available} primes but {requested} were requested")]
    TooFewPrimes { available: usize, requested: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}: {message}")]
    Io { path: String, message: String },

    #[error("corpus: {0}")]
    Corpus(String),
}

pub type Result<T> = std::result::Result<T, Error>;
