use thiserror::Error;

/// Errors raised anywhere in the optimizer stack.
#[derive(Debug, Error)]
pub enum GlisError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("eigendecomposition did not converge")]
    NoConvergence,
    #[error("matrix is not positive definite (pivot {pivot:e} at row {row})")]
    NotPositiveDefinite { row: usize, pivot: f64 },
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("constraints are infeasible within the box")]
    InfeasibleConstraints,
    #[error("degenerate box: upper bound equals lower bound in coordinate {0}")]
    DegenerateBox(usize),
    #[error("feasible set is not full-dimensional (Chebyshev radius {0:e})")]
    NotFullDimensional(f64),
    #[error("feasible volume too small: only {found} of {wanted} feasible samples after {rounds} rounds")]
    LowFeasibleVolume { found: usize, wanted: usize, rounds: usize },
    #[error("query point coincides with a sample")]
    CoincidentPoint,
    #[error("point duplicates an existing sample")]
    DuplicatePoint,
    #[error("point lies outside the box")]
    OutOfBounds,
    #[error("operation not allowed in phase {0:?}")]
    InvalidPhase(crate::optimizer::Phase),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("unknown benchmark `{name}`; available: {available}")]
    UnknownBenchmark { name: String, available: String },
    #[error("active-set enumeration bound exceeded (n = {n}, q = {q})")]
    EnumerationBoundExceeded { n: usize, q: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, GlisError>;
