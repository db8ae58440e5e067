//! Initial designs: Latin hypercube sampling, its oversample-and-filter
//! variant for constrained sets, and a greedy IDW-distance design.

use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::acquisition::idw_distance;
use crate::error::{GlisError, Result};
use crate::numerics::{solve_lp, DenseMatrix, LpProblem, Sense};
use crate::optimizer::{pso_minimize, PsoConfig};
use crate::problem::{build_scaling, ProblemSpec};
use crate::surrogate::{squared_distance, IdwWeightKind, SampleSet};

/// Oversampling rounds before giving up on a constrained design.
pub const MAX_OVERSAMPLING_ROUNDS: usize = 10;

/// Largest design drawn in one oversampling round.
pub const MAX_ROUND_POINTS: usize = 100_000;

/// Feasibility slack used when filtering candidate points.
const FEASIBILITY_SLACK: f64 = 1e-9;

/// Latin hypercube design of `count` points in the box `[lower, upper]`.
///
/// Every coordinate places exactly one point in each of `count` equal-width
/// bins; bin order comes from a seeded ChaCha8 shuffle and the position
/// inside a bin is uniform.
pub fn latin_hypercube(count: usize, lower: &[f64], upper: &[f64], seed: u64) -> DenseMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    latin_hypercube_rng(count, lower, upper, &mut rng)
}

pub(crate) fn latin_hypercube_rng(count: usize, lower: &[f64], upper: &[f64], rng: &mut impl Rng) -> DenseMatrix {
    let n = lower.len();
    let mut x = DenseMatrix::zeros(count, n);
    let mut bins: Vec<usize> = (0..count).collect();
    for j in 0..n {
        bins.shuffle(rng);
        let w = upper[j] - lower[j];
        for (i, &b) in bins.iter().enumerate() {
            let u: f64 = rng.random();
            x[(i, j)] = (lower[j] + (b as f64 + u) / count as f64 * w).min(upper[j]);
        }
    }
    x
}

/// Repeats LHS with a growing sample count until `wanted` points satisfy
/// `is_feasible`; the first `wanted` feasible points in generation order are
/// kept.
pub(crate) fn filtered_lhs(
    lower: &[f64],
    upper: &[f64],
    wanted: usize,
    rng: &mut impl Rng,
    is_feasible: impl Fn(&[f64]) -> bool,
) -> Result<DenseMatrix> {
    let n = lower.len();
    let mut count = wanted;
    let mut found = 0;
    for _ in 0..MAX_OVERSAMPLING_ROUNDS {
        let design = latin_hypercube_rng(count, lower, upper, rng);
        let feasible: Vec<usize> = (0..count)
            .filter(|&i| {
                let row: Vec<f64> = design.row(i).iter().copied().collect();
                is_feasible(&row)
            })
            .collect();
        found = feasible.len();
        if found >= wanted {
            let mut out = DenseMatrix::zeros(wanted, n);
            for (k, &i) in feasible.iter().take(wanted).enumerate() {
                out.row_mut(k).copy_from(&design.row(i));
            }
            return Ok(out);
        }
        count = if found > 0 {
            let grow = (1.1 * wanted as f64 / found as f64).min(20.0);
            (grow * count as f64).ceil() as usize
        } else {
            20 * count
        }
        .min(MAX_ROUND_POINTS.max(wanted));
    }
    Err(GlisError::LowFeasibleVolume { found, wanted, rounds: MAX_OVERSAMPLING_ROUNDS })
}

/// `wanted` feasible points from oversampled Latin hypercube designs.
///
/// With linear constraints the feasible set is first checked to be
/// full-dimensional through its Chebyshev radius.
pub fn constrained_lhs(spec: &ProblemSpec, wanted: usize, seed: u64) -> Result<DenseMatrix> {
    if spec.linear().is_some() {
        let r = chebyshev_radius(spec)?;
        if r <= 0.0 {
            return Err(GlisError::NotFullDimensional(r));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    filtered_lhs(spec.lower(), spec.upper(), wanted, &mut rng, |x| spec.is_feasible(x, FEASIBILITY_SLACK))
}

/// Radius of the largest ball inside `{x : ℓ ≤ x ≤ u, A x ≤ b}`.
///
/// Solved as the LP `max r` s.t. `Aᵢx + ‖Aᵢ‖ r ≤ bᵢ`, `ℓ + r ≤ x ≤ u − r`.
/// Nonlinear constraints are ignored. An empty set is reported as
/// [`GlisError::Infeasible`].
pub fn chebyshev_radius(spec: &ProblemSpec) -> Result<f64> {
    let n = spec.dim();
    let q = spec.linear().map_or(0, |l| l.rows());
    let mut a = DenseMatrix::zeros(q + 2 * n, n + 1);
    let mut b = Vec::with_capacity(q + 2 * n);
    if let Some(lin) = spec.linear() {
        for i in 0..q {
            let row = lin.a.row(i);
            for j in 0..n {
                a[(i, j)] = row[j];
            }
            a[(i, n)] = row.norm();
            b.push(lin.b[i]);
        }
    }
    for j in 0..n {
        a[(q + 2 * j, j)] = -1.0;
        a[(q + 2 * j, n)] = 1.0;
        b.push(-spec.lower()[j]);
        a[(q + 2 * j + 1, j)] = 1.0;
        a[(q + 2 * j + 1, n)] = 1.0;
        b.push(spec.upper()[j]);
    }
    let mut cost = vec![0.0; n + 1];
    cost[n] = 1.0;
    let sol = solve_lp(&LpProblem::new(cost, Sense::Maximize).with_rows(a, b))?;
    if sol.value < -1e-12 {
        return Err(GlisError::Infeasible);
    }
    Ok(sol.value.max(0.0))
}

/// Greedy design `x_{k+1} = argmax_{x ∈ 𝓕} z(x)` starting from a feasible
/// `x1`. The IDW distance is measured in coordinates scaled to `[-1, 1]`
/// and each step is solved by PSO with a quadratic constraint penalty.
pub fn idw_feasible_init(spec: &ProblemSpec, x1: &[f64], wanted: usize, pso: &PsoConfig) -> Result<DenseMatrix> {
    const RHO: f64 = 1000.0;
    let n = spec.dim();
    if x1.len() != n {
        return Err(GlisError::DimensionMismatch(format!("x1 has length {}, n = {n}", x1.len())));
    }
    if !spec.in_box(x1, 0.0) || !spec.is_feasible(x1, FEASIBILITY_SLACK) {
        return Err(GlisError::InfeasibleConstraints);
    }
    let scaling = build_scaling(spec.lower(), spec.upper(), None)?;
    let mut samples = SampleSet::new(n);
    samples.push(&scaling.to_scaled(x1), 0.0)?;
    let mut points = vec![x1.to_vec()];
    let kind = IdwWeightKind::InverseSquared;
    let mut rng = ChaCha8Rng::seed_from_u64(pso.seed);
    let (lo, hi) = (vec![-1.0; n], vec![1.0; n]);

    while points.len() < wanted {
        let cfg = PsoConfig { seed: rng.next_u64(), ..*pso };
        let res = pso_minimize(
            |xs| -idw_distance(&samples, xs, kind) + RHO * spec.penalty(&scaling.to_original(xs)),
            &lo,
            &hi,
            &cfg,
        )?;
        let best = std::iter::once(&res.x)
            .chain(res.population.iter())
            .filter(|xs| {
                spec.is_feasible(&scaling.to_original(xs), FEASIBILITY_SLACK)
                    && samples.points().all(|p| squared_distance(p, xs) > 1e-20)
            })
            .map(|xs| (idw_distance(&samples, xs, kind), xs))
            .fold(None, |acc: Option<(f64, &Vec<f64>)>, c| match acc {
                Some(a) if a.0 >= c.0 => Some(a),
                _ => Some(c),
            });
        let Some((_, xs)) = best else {
            return Err(GlisError::InfeasibleConstraints);
        };
        let xs = xs.clone();
        samples.push(&xs, 0.0)?;
        let x: Vec<f64> = scaling
            .to_original(&xs)
            .into_iter()
            .zip(spec.lower().iter().zip(spec.upper()))
            .map(|(v, (l, u))| v.clamp(*l, *u))
            .collect();
        points.push(x);
    }
    let mut out = DenseMatrix::zeros(points.len().min(wanted.max(1)), n);
    for (i, p) in points.iter().take(out.nrows()).enumerate() {
        for j in 0..n {
            out[(i, j)] = p[j];
        }
    }
    Ok(out)
}
