//! Global optimization of expensive black-box functions.
//!
//! The optimizer fits a surrogate (radial basis functions, or inverse distance
//! weighting) to the samples collected so far and picks the next sample by
//! minimizing an acquisition function that mixes the surrogate with two
//! IDW-based exploration terms:
//!
//! ```text
//! a(x) = f̂(x) − α·s(x) − δ·ΔF·z(x)
//! ```
//!
//! where `s` is the IDW variance of the samples around the surrogate and `z`
//! is the IDW distance function, zero at samples and saturating to one far
//! from them. The acquisition is minimized with a particle swarm over the
//! box rescaled to `[-1, 1]^n`; cheap constraints enter as quadratic
//! penalties.
//!
//! ```
//! use glis::{GlisConfig, ProblemSpec, glis_run};
//!
//! let spec = ProblemSpec::new(vec![-3.0], vec![3.0], |x: &[f64]| glis::benchmarks::f_1d(x[0])).unwrap();
//! let mut cfg = GlisConfig::new(1);
//! cfg.n_init = 8;
//! cfg.n_max = 20;
//! let res = glis_run(&spec, &cfg).unwrap();
//! assert!(res.f_best < 1.0);
//! ```

pub mod acquisition;
pub mod benchmarks;
pub mod cli;
mod error;
pub mod numerics;
pub mod optimizer;
pub mod problem;
pub mod sampling;
pub mod surrogate;

pub use error::{GlisError, Result};
pub use optimizer::{glis_run, GlisConfig, GlisResult, GlisState, Phase, PsoConfig, SurrogateChoice};
pub use problem::{LinearConstraints, ProblemSpec, ScalingMap};
pub use surrogate::{IdwWeightKind, RbfKernel, RbfKind, SampleSet};
