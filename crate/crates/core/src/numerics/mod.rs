//! Dense linear-algebra kernels: truncated spectral solve, Cholesky solve and
//! a small two-phase simplex.

mod linalg;
mod lp;

pub use linalg::{lu_solve, spd_solve, svd_truncated_solve, DenseMatrix};
pub use lp::{solve_lp, LpProblem, LpSolution, Sense};
