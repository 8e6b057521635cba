use thiserror::Error;

/// Errors from fundamental-solution evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FsError {
    #[error("source equals target: the fundamental solution has a logarithmic singularity there")]
    Coincident,
    #[error("truncation failed to converge after {0} interval expansions")]
    TruncationFailed(usize),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("non-finite integrand encountered (a = {a}, b = {b})")]
    NonFinite { a: f64, b: f64 },
    #[error("helmholtz mode requires E > 0, got {0}")]
    NonPositiveEnergy(f64),
}

/// Errors from batch evaluation, carrying the index of the failing target.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("target {index}: {source}")]
pub struct BatchError {
    pub index: usize,
    #[source]
    pub source: FsError,
}

/// Errors raised by the special-function oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    #[error("argument {arg} outside supported range [{lo}, {hi}]")]
    OutOfRange { arg: f64, lo: f64, hi: f64 },
}

/// Errors from boundary construction and the integral-equation solver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum BieError {
    #[error("polar radius is non-positive at theta = {theta} (r = {r})")]
    NonPositiveRadius { theta: f64, r: f64 },
    #[error("too few nodes: need N >= {min}, got {n}")]
    TooFewNodes { n: usize, min: usize },
    #[error("exterior problem with default eta requires E > 0, got {0}")]
    NeedPositiveEnergy(f64),
    #[error("kernel evaluation failed at row {row}, column {col}: {source}")]
    Kernel {
        row: usize,
        col: usize,
        #[source]
        source: FsError,
    },
    #[error("matrix is singular or ill-conditioned (pivot ratio estimate {cond:.3e})")]
    Singular { cond: f64 },
    #[error("GMRES did not converge in {iters} iterations (relative residual {residual:.3e})")]
    NoConvergence { iters: usize, residual: f64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("target {index} lies within 0.1 node spacings of the boundary: too close for naive quadrature")]
    TargetTooClose { index: usize },
    #[error(transparent)]
    Batch(#[from] BatchError),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error("invalid input: {0}")]
    Invalid(String),
}
