use thiserror::Error;

/// Errors raised by the exact-arithmetic kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("polynomial is reducible: {0}")]
    ReduciblePolynomial(String),

    #[error("no root of the polynomial lies in the isolating interval")]
    NoRootInInterval,

    #[error("the isolating interval contains {0} roots")]
    MultipleRootsInInterval(usize),

    #[error("precision cap of {cap} bits exhausted at index {index}")]
    PrecisionExhausted { index: usize, cap: u64 },

    #[error("identity violated at k = {k}: {detail}")]
    IdentityViolation { k: usize, detail: String },

    #[error("terms do not satisfy an integer linear recurrence of order <= {max_order}")]
    NotARecurrence { max_order: usize },

    #[error("need at least {needed} terms, got {got}")]
    InsufficientTerms { needed: usize, got: usize },

    #[error("sparsity {0} is not supported by the divisor enumerator")]
    UnsupportedSparsity(u32),

    #[error("{0} is not a prime accepted by the deterministic primality test")]
    NotPrime(String),

    #[error("gamma search exhausted after {steps} candidates")]
    GammaSearchExhausted { steps: u64 },

    #[error("no admissible stage found for stage {stage}: {reason}")]
    StageSelectionExhausted { stage: usize, reason: String },

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("malformed data: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
