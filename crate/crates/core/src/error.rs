use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("s = {s} lies within the exclusion radius of a pole")]
    PoleProximity { s: Complex64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("Newton iteration did not converge from {seed} after {iterations} iterations")]
    NoConvergence { seed: Complex64, iterations: usize },

    #[error("derivative underflow at {s}")]
    DerivativeUnderflow { s: Complex64 },

    #[error("zero of the energy on the contour near {s}")]
    BoundaryZero { s: Complex64 },

    #[error("phase tracking needed more than {limit} boundary samples")]
    PhaseStepFailure { limit: usize },

    #[error("subdivision depth {depth} exceeded")]
    DepthExceeded { depth: usize },

    #[error("adaptive quadrature exceeded depth {depth} (error estimate {estimate:e})")]
    QuadratureFailure { depth: usize, estimate: f64 },

    #[error("Re s = {re} is inside the branch boundary strip of the theta representation")]
    BranchBoundary { re: f64 },

    #[error("continuation step collapsed below {step:e} at delta = {delta}")]
    StepCollapse { delta: f64, step: f64 },

    #[error("branch cannot be classified: {0}")]
    Unclassifiable(String),

    #[error("need at least {needed} samples, found {found}")]
    InsufficientSamples { needed: usize, found: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
