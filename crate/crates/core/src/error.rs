use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    CompositeModulus(u64),
    #[error("modulus {0} is outside [2, 65521]")]
    OutOfRange(u64),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },
    #[error("diagonal entry {0} is zero")]
    ZeroEntry(usize),
    #[error("matrix has rank {rank}, expected {rows}")]
    RankDeficient { rank: usize, rows: usize },
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("spike needs n >= 3, got n = {0}")]
    TooSmall(usize),
    #[error("transversal {0} is dependent")]
    DependentTransversal(String),
    #[error("index set {0} is not in the signature")]
    NotInSignature(String),
    #[error("diagonal has no circuit-hyperplane")]
    NoCircuitHyperplane,
    #[error("shape mismatch: {0}")]
    MismatchedShape(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("no subset attains the target")]
    NoWitness,
    #[error("budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
