use thiserror::Error;

/// Errors raised by the model, quench, speed-limit and noise layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid chain length {0}: need at least 2 sites per leg")]
    InvalidSize(usize),

    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("no gap-closing mode: M = {m} must be below 2K = {two_k}")]
    NoGaplessMode { m: f64, two_k: f64 },

    #[error("arccos(M/2K)/pi = {0} is not a rational number with denominator <= {1}")]
    Incommensurate(f64, u64),

    #[error("wave number {0} has sin(k) = 0 and is excluded from the zero condition")]
    ExcludedMode(f64),

    #[error("zero-energy mode has a vanishing gap; no finite critical time exists")]
    NoFiniteCriticalTime,

    #[error("no post-quench phase yields an exact Loschmidt-echo zero at L = {0}")]
    NoSolution(usize),

    #[error("the quadratic for the theta2 = -pi/2 frontier has no real root")]
    NoAsymptote,

    #[error("energy variance must be positive, got {0}")]
    InvalidVariance(f64),

    #[error("invalid noise ensemble: {0}")]
    InvalidEnsemble(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
