use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("lattice basis is linearly dependent")]
    DependentBasis,
    #[error("integer overflow in lattice transform")]
    Overflow,
    #[error("invalid frequency system: {0}")]
    InvalidSystem(String),
    #[error("sums are defined over different frequency systems")]
    MismatchedSystems,
    #[error("operation requires an integral system")]
    NonIntegral,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("sums are not equivalent: {0}")]
    NotEquivalent(String),
    #[error("grid step {step} too coarse, need step <= {required}")]
    StepTooCoarse { step: f64, required: f64 },
    #[error("no solution found up to search bound {bound:e}")]
    NotFound { bound: f64 },
    #[error("n = {n} exceeds sieve bound {bound}")]
    BeyondSieve { n: u64, bound: u64 },
    #[error("tolerance {tol:e} not reachable within {terms} terms; achievable bound {achievable:e}")]
    ToleranceUnreachable { tol: f64, terms: u64, achievable: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
