use thiserror::Error;

/// Errors raised by the counting engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("q = {0} is not prime; enumeration needs a prime field")]
    NotPrimeField(u64),
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("size limit exceeded: q = {q}, degree {degree} needs {count} polynomials, guard is {guard}")]
    SizeLimit {
        q: u64,
        degree: usize,
        count: f64,
        guard: u64,
    },
    #[error("n = {n} is outside the built range 0..={n_max}")]
    OutOfRange { n: usize, n_max: usize },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: String },
    #[error("domain violation: {0}")]
    Domain(String),
    #[error("regime violation: {0}")]
    Regime(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("insufficient accuracy: {0}")]
    Accuracy(String),
    #[error("consistency check failed: {0}")]
    Consistency(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("branch cut straddled: {0}")]
    BranchCut(String),
}

pub type Result<T> = std::result::Result<T, Error>;
