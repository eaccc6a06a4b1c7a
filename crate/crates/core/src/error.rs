use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid norm exponent {0}: p must be >= 1")]
    InvalidNorm(f64),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("vertex index {index} out of range for {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("size mismatch: expected {expected} vertices, got {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("invalid tour: {0}")]
    InvalidTour(String),

    #[error("weight {weight} on edge ({u},{v}) outside [0,1]")]
    WeightOutOfRange { u: usize, v: usize, weight: f64 },

    #[error("{solver} supports {min} <= n <= {max}, got n = {n}")]
    SizeCap {
        solver: &'static str,
        n: usize,
        min: usize,
        max: usize,
    },

    #[error("invalid linear program: {0}")]
    InvalidLp(String),

    #[error("simplex stalled after {iterations} iterations")]
    NumericalStall { iterations: usize },

    #[error("simplex solution violates a constraint by {residual:e}")]
    NumericalInaccuracy { residual: f64 },

    #[error("linear program is {0}")]
    LpNotOptimal(&'static str),

    #[error("cutting-plane loop did not converge after {rounds} rounds")]
    CutLoopLimit { rounds: usize },

    #[error("invalid pseudo-tour: {0}")]
    InvalidPseudoTour(String),

    #[error("invalid subdivided graph: {0}")]
    InvalidGraph(String),

    #[error("too many odd-degree vertices for exact matching: {found} > {cap}")]
    OddVertexCap { found: usize, cap: usize },

    #[error("certificate identity violated: {0}")]
    CertificateViolation(String),

    #[error("gradient undefined: {0}")]
    GradientUndefined(String),

    #[error("infeasible construction: {0}")]
    InfeasibleConstruction(String),

    #[error("local search: {0}")]
    LocalSearch(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
