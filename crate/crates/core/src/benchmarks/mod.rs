//! Benchmark problems and case studies, looked up by name.

pub mod admm;
mod functions;
mod selftune;

use std::f64::consts::PI;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use admm::{admm_performance, admm_qp_solve, qp_reference_solve, AdmmBenchmark, AdmmConfig, QpProblem};
pub use functions::{
    ackley, adjiman, branin, camel_six_humps, f_1d, hartman3, hartman6, himmelblau, rosenbrock, step2,
    styblinski_tang,
};
pub use selftune::{self_tuning_objective, INNER_N_INIT};

use crate::error::{GlisError, Result};
use crate::numerics::DenseMatrix;
use crate::problem::ProblemSpec;

/// Registry names, in listing order.
pub const BENCHMARK_NAMES: [&str; 13] = [
    "ackley",
    "adjiman",
    "branin",
    "camelsixhumps",
    "hartman3",
    "hartman6",
    "himmelblau",
    "rosenbrock8",
    "stepfunction2",
    "styblinski-tang5",
    "camelsixhumps-constrained",
    "f1d",
    "admm-qp",
];

/// The ten unconstrained box-bounded test problems.
pub const SUITE_NAMES: [&str; 10] = [
    "ackley",
    "adjiman",
    "branin",
    "camelsixhumps",
    "hartman3",
    "hartman6",
    "himmelblau",
    "rosenbrock8",
    "stepfunction2",
    "styblinski-tang5",
];

/// Samples of `θ` and ADMM iterations in the registered tuning problem.
pub const ADMM_SAMPLES: usize = 2000;
pub const ADMM_ITERATIONS: usize = 100;
pub const ADMM_SEED: u64 = 2019;

#[derive(Debug, Clone)]
pub struct BenchmarkProblem {
    pub name: &'static str,
    pub spec: ProblemSpec,
    /// Global minimum value, where known.
    pub known_optimum: Option<f64>,
    pub known_optimizers: Vec<Vec<f64>>,
    pub default_n_init: usize,
    pub default_n_max: usize,
}

/// Constraints of the constrained six-hump camel problem: `(A, b)` and the disk.
pub fn camel_constraints() -> (DenseMatrix, Vec<f64>) {
    #[rustfmt::skip]
    let a = DenseMatrix::from_row_slice(5, 2, &[
        1.6295, 1.0,
        -1.0, 4.4553,
        -4.3023, -1.0,
        -5.6905, -12.1374,
        17.6198, 1.0,
    ]);
    (a, vec![3.0786, 2.7417, -1.4909, 1.0, 32.5198])
}

pub fn camel_disk(x: &[f64]) -> Vec<f64> {
    vec![x[0] * x[0] + (x[1] + 0.1).powi(2) - 0.5]
}

fn problem(
    name: &'static str,
    lower: Vec<f64>,
    upper: Vec<f64>,
    f: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    optimum: f64,
    optimizers: Vec<Vec<f64>>,
) -> Result<BenchmarkProblem> {
    let n = lower.len();
    Ok(BenchmarkProblem {
        name,
        spec: ProblemSpec::new(lower, upper, f)?,
        known_optimum: Some(optimum),
        known_optimizers: optimizers,
        default_n_init: 2 * n,
        default_n_max: 20 * n,
    })
}

/// Looks up a problem by registry name.
pub fn get_benchmark(name: &str) -> Result<BenchmarkProblem> {
    let b = match name {
        "ackley" => problem(name_of(name), vec![-5.0; 2], vec![5.0; 2], ackley, 0.0, vec![vec![0.0; 2]]),
        "adjiman" => problem(
            name_of(name),
            vec![-1.0; 2],
            vec![2.0, 1.0],
            adjiman,
            -2.021806783359787,
            vec![vec![2.0, 0.1057834690229469]],
        ),
        "branin" => problem(
            name_of(name),
            vec![-5.0, 0.0],
            vec![10.0, 15.0],
            branin,
            0.39788735772973816,
            vec![vec![-PI, 12.275], vec![PI, 2.275], vec![3.0 * PI, 2.475]],
        ),
        "camelsixhumps" => problem(
            name_of(name),
            vec![-5.0; 2],
            vec![5.0; 2],
            camel_six_humps,
            -1.0316284534898772,
            vec![vec![0.08984200808599517, -0.7126564076206299], vec![-0.08984200808599517, 0.7126564076206299]],
        ),
        "hartman3" => problem(
            name_of(name),
            vec![0.0; 3],
            vec![1.0; 3],
            hartman3,
            -3.8627797873326597,
            vec![vec![0.11458885404820057, 0.5556488915814946, 0.8525469799915564]],
        ),
        "hartman6" => problem(
            name_of(name),
            vec![0.0; 6],
            vec![1.0; 6],
            hartman6,
            -3.322368011415514,
            vec![vec![
                0.20168950968761765,
                0.15001069413863433,
                0.47687396963094986,
                0.27533242916768874,
                0.31165161370991157,
                0.6573005333899428,
            ]],
        ),
        "himmelblau" => problem(
            name_of(name),
            vec![-6.0; 2],
            vec![6.0; 2],
            himmelblau,
            0.0,
            vec![
                vec![3.0, 2.0],
                vec![-2.805118086952745, 3.131312518250573],
                vec![-3.779310253377747, -3.283185991286170],
                vec![3.584428340330492, -1.848126526964404],
            ],
        ),
        "rosenbrock8" => problem(name_of(name), vec![-30.0; 8], vec![30.0; 8], rosenbrock, 0.0, vec![vec![1.0; 8]]),
        "stepfunction2" => problem(name_of(name), vec![-100.0; 4], vec![100.0; 4], step2, 0.0, vec![vec![0.0; 4]]),
        "styblinski-tang5" => problem(
            name_of(name),
            vec![-5.0; 5],
            vec![5.0; 5],
            styblinski_tang,
            -195.830828518857,
            vec![vec![-2.903534055059568; 5]],
        ),
        "camelsixhumps-constrained" => {
            let (a, b) = camel_constraints();
            let spec = ProblemSpec::new(vec![-2.0, -1.0], vec![2.0, 1.0], camel_six_humps)?
                .with_linear_constraints(a, b)?
                .with_constraint_fn(camel_disk);
            Ok(BenchmarkProblem {
                name: name_of(name),
                spec,
                known_optimum: Some(-0.58443314201851),
                known_optimizers: vec![vec![0.2130619108621557, 0.574243740897745]],
                default_n_init: 4,
                default_n_max: 20,
            })
        }
        "f1d" => Ok(BenchmarkProblem {
            name: name_of(name),
            spec: ProblemSpec::new(vec![-3.0], vec![3.0], |x: &[f64]| f_1d(x[0]))?,
            known_optimum: Some(0.2795044960582651),
            known_optimizers: vec![vec![-0.9597685739092595]],
            default_n_init: INNER_N_INIT,
            default_n_max: 20,
        }),
        "admm-qp" => {
            let bench = Arc::new(AdmmBenchmark::new(QpProblem::tuning_instance(), ADMM_SAMPLES, ADMM_ITERATIONS, ADMM_SEED)?);
            let spec = ProblemSpec::new(vec![0.01; 2], vec![3.0; 2], move |x: &[f64]| {
                bench.performance(x).unwrap_or(f64::INFINITY)
            })?;
            Ok(BenchmarkProblem {
                name: name_of(name),
                spec,
                known_optimum: None,
                known_optimizers: vec![vec![0.1566, 1.9498]],
                default_n_init: 4,
                default_n_max: 40,
            })
        }
        _ => Err(GlisError::UnknownBenchmark { name: name.to_string(), available: BENCHMARK_NAMES.join(", ") }),
    }?;
    Ok(b)
}

fn name_of(name: &str) -> &'static str {
    BENCHMARK_NAMES.iter().find(|n| **n == name).copied().unwrap_or("")
}

/// Best-so-far values of `n_evals` points drawn uniformly in the box of
/// `spec`. Constraints are ignored.
pub fn random_search(spec: &ProblemSpec, n_evals: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = (spec.lower(), spec.upper());
    let mut best = f64::INFINITY;
    (0..n_evals)
        .map(|_| {
            let x: Vec<f64> = lo.iter().zip(hi).map(|(l, u)| l + rng.random::<f64>() * (u - l)).collect();
            best = best.min(spec.evaluate(&x));
            best
        })
        .collect()
}
