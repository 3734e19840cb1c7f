use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("q must be at least 3, got {0}")]
    InvalidQ(u32),
    #[error("operation requires q in {expected}, got {q}")]
    UnsupportedQ { q: u32, expected: &'static str },
    #[error("element is not an odd vanishing cycle")]
    NotMember,
    #[error("matrix does not lie in the Hecke group")]
    NotInGroup,
    #[error("malformed tuple: {0}")]
    MalformedTuple(String),
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("primes must be pairwise distinct primes")]
    InvalidPrimes,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("step cap of {0} exceeded")]
    StepCapExceeded(usize),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
