//! Parametric QP `min ½z'Qz + (c+Fθ)'z  s.t.  Az ≤ b + Sθ`, a fixed-iteration
//! ADMM solver for it, an exact active-set reference solver and the
//! hyperparameter-tuning objective built on both.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{GlisError, Result};
use crate::numerics::{lu_solve, spd_solve, DenseMatrix};

/// Largest `n` and `q` accepted by [`qp_reference_solve`].
pub const MAX_ENUM_VARS: usize = 12;
pub const MAX_ENUM_ROWS: usize = 16;

/// Floor applied before taking the logarithm in [`admm_performance`].
pub const PERFORMANCE_FLOOR: f64 = 1e-300;

/// Per-sample cap on the performance bracket; diverging ADMM runs hit it.
const TERM_CAP: f64 = 1e300;

#[derive(Debug, Clone, PartialEq)]
pub struct QpProblem {
    pub q: DenseMatrix,
    pub c: Vec<f64>,
    pub f: DenseMatrix,
    pub a: DenseMatrix,
    pub b: Vec<f64>,
    pub s: DenseMatrix,
}

#[rustfmt::skip]
const Q: [f64; 25] = [
     6.6067, -1.6361,  2.8198,  0.3776,  3.1448,
    -1.6361,  0.9943, -0.9998, -0.4786, -0.5198,
     2.8198, -0.9998,  4.0749,  0.2183,  0.2714,
     0.3776, -0.4786,  0.2183,  0.7310,  0.1689,
     3.1448, -0.5198,  0.2714,  0.1689,  2.1716,
];
const C: [f64; 5] = [-11.4795, 1.0487, 7.2225, 25.8549, -6.6689];
#[rustfmt::skip]
const A: [f64; 50] = [
    -0.8637, -1.0891, -0.6156,  1.4193, -1.0,
     0.0774,  0.0326,  0.7481,  0.2916, -1.0,
    -1.2141,  0.5525, -0.1924,  0.1978, -1.0,
    -1.1135,  1.1006,  0.8886,  1.5877, -1.0,
    -0.0068,  1.5442, -0.7648, -0.8045, -1.0,
     1.5326,  0.0859, -1.4023,  0.6966, -1.0,
    -0.7697, -1.4916, -1.4224,  0.8351, -1.0,
     0.3714, -0.7423,  0.4882, -0.2437, -1.0,
    -0.2256, -1.0616, -0.1774,  0.2157, -1.0,
     1.1174,  2.3505, -0.1961, -1.1658, -1.0,
];
const B: [f64; 10] = [0.0838, 0.2290, 0.9133, 0.1524, 0.8258, 0.5383, 0.9961, 0.0782, 0.4427, 0.1067];
#[rustfmt::skip]
const F: [f64; 15] = [
      1.8733,  8.4038, -6.0033,
     -0.8249, -8.8803,  4.8997,
    -19.3302,  1.0009,  7.3936,
     -4.3897, -5.4453, 17.1189,
    -17.9468,  3.0352, -1.9412,
];
#[rustfmt::skip]
const S: [f64; 30] = [
     2.9080, -0.3538,  0.0229,
     0.8252, -0.8236, -0.2620,
     1.3790, -1.5771, -1.7502,
    -1.0582,  0.5080, -0.2857,
    -0.4686,  0.2820, -0.8314,
    -0.2725,  0.0335, -0.9792,
     1.0984, -1.3337, -1.1564,
    -0.2779,  1.1275, -0.5336,
     0.7015,  0.3502, -2.0026,
    -2.0518, -0.2991,  0.9642,
];

impl QpProblem {
    pub fn new(q: DenseMatrix, c: Vec<f64>, f: DenseMatrix, a: DenseMatrix, b: Vec<f64>, s: DenseMatrix) -> Result<Self> {
        let n = q.nrows();
        let ok = q.ncols() == n
            && c.len() == n
            && f.nrows() == n
            && a.ncols() == n
            && b.len() == a.nrows()
            && s.nrows() == a.nrows()
            && s.ncols() == f.ncols();
        if !ok {
            return Err(GlisError::DimensionMismatch("QP matrices".into()));
        }
        if (0..n).any(|i| (0..i).any(|j| (q[(i, j)] - q[(j, i)]).abs() > 1e-12 * (1.0 + q[(i, j)].abs()))) {
            return Err(GlisError::NotSymmetric);
        }
        Ok(Self { q, c, f, a, b, s })
    }

    /// The 5-variable, 10-constraint, 3-parameter instance used by the
    /// tuning study; feasible for every `θ ∈ [-1, 1]³`.
    pub fn tuning_instance() -> Self {
        Self {
            q: DenseMatrix::from_row_slice(5, 5, &Q),
            c: C.to_vec(),
            f: DenseMatrix::from_row_slice(5, 3, &F),
            a: DenseMatrix::from_row_slice(10, 5, &A),
            b: B.to_vec(),
            s: DenseMatrix::from_row_slice(10, 3, &S),
        }
    }

    pub fn n(&self) -> usize {
        self.q.nrows()
    }

    pub fn rows(&self) -> usize {
        self.a.nrows()
    }

    pub fn params(&self) -> usize {
        self.f.ncols()
    }

    /// `c + Fθ`.
    pub fn linear_term(&self, theta: &[f64]) -> Vec<f64> {
        (0..self.n()).map(|i| self.c[i] + dot(self.f.row(i).iter(), theta)).collect()
    }

    /// `b + Sθ`.
    pub fn rhs(&self, theta: &[f64]) -> Vec<f64> {
        (0..self.rows()).map(|i| self.b[i] + dot(self.s.row(i).iter(), theta)).collect()
    }

    /// `½z'Qz + (c+Fθ)'z`.
    pub fn objective(&self, z: &[f64], theta: &[f64]) -> f64 {
        let lin = self.linear_term(theta);
        let qz = &self.q * nalgebra::DVector::from_column_slice(z);
        0.5 * dot(qz.iter(), z) + dot(lin.iter(), z)
    }

    fn check_theta(&self, theta: &[f64]) -> Result<()> {
        if theta.len() != self.params() {
            return Err(GlisError::DimensionMismatch(format!("θ has length {}, p = {}", theta.len(), self.params())));
        }
        Ok(())
    }
}

fn dot<'a>(a: impl Iterator<Item = &'a f64>, b: &[f64]) -> f64 {
    a.zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdmmConfig {
    /// Penalty `ρ̄ > 0`.
    pub rho_bar: f64,
    /// Relaxation `ᾱ`.
    pub alpha_bar: f64,
    pub iterations: usize,
}

impl AdmmConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rho_bar > 0.0 && self.rho_bar.is_finite()) || !self.alpha_bar.is_finite() || self.iterations == 0 {
            return Err(GlisError::InvalidConfig(format!("invalid ADMM settings {self:?}")));
        }
        Ok(())
    }
}

/// Factorization shared by every `θ` for fixed `ρ̄`:
/// `M_A = (Q/ρ̄ + A'A)⁻¹A'` and `K⁻¹ = (Q/ρ̄ + A'A)⁻¹`. The linear term is
/// `m_θ = K⁻¹(c+Fθ)/ρ̄`, which makes the `z`-update the exact minimizer of
/// the augmented Lagrangian `½z'Qz + (c+Fθ)'z + ρ̄/2‖Az − s + u‖²`.
struct AdmmFactor {
    m_a: DenseMatrix,
    k_inv: DenseMatrix,
    rho_bar: f64,
}

impl AdmmFactor {
    fn new(qp: &QpProblem, rho_bar: f64) -> Result<Self> {
        let n = qp.n();
        let k = &qp.q / rho_bar + qp.a.transpose() * &qp.a;
        let mut rhs = DenseMatrix::zeros(n, n + qp.rows());
        rhs.view_mut((0, 0), (n, n)).fill_with_identity();
        rhs.view_mut((0, n), (n, qp.rows())).copy_from(&qp.a.transpose());
        let sol = spd_solve(&k, &rhs)?;
        Ok(Self { k_inv: sol.columns(0, n).into_owned(), m_a: sol.columns(n, qp.rows()).into_owned(), rho_bar })
    }

    fn solve(&self, qp: &QpProblem, theta: &[f64], cfg: &AdmmConfig) -> (Vec<f64>, f64) {
        let (n, q) = (qp.n(), qp.rows());
        let lin = qp.linear_term(theta);
        let m_theta: Vec<f64> = (0..n).map(|i| dot(self.k_inv.row(i).iter(), &lin) / self.rho_bar).collect();
        let b_theta = qp.rhs(theta);
        let (mut s, mut u) = (vec![0.0; q], vec![0.0; q]);
        let mut z = vec![0.0; n];
        let mut su = vec![0.0; q];
        let a = cfg.alpha_bar;
        for _ in 0..cfg.iterations {
            for k in 0..q {
                su[k] = s[k] - u[k];
            }
            for i in 0..n {
                z[i] = dot(self.m_a.row(i).iter(), &su) - m_theta[i];
            }
            for k in 0..q {
                let w = a * dot(qp.a.row(k).iter(), &z) + (1.0 - a) * s[k];
                s[k] = (w + u[k]).min(b_theta[k]);
                u[k] += w - s[k];
            }
        }
        let obj = qp.objective(&z, theta);
        (z, obj)
    }
}

/// Runs exactly `cfg.iterations` ADMM steps from `s = u = 0` and returns
/// the final `z` with its QP objective value.
pub fn admm_qp_solve(qp: &QpProblem, theta: &[f64], cfg: &AdmmConfig) -> Result<(Vec<f64>, f64)> {
    cfg.validate()?;
    qp.check_theta(theta)?;
    Ok(AdmmFactor::new(qp, cfg.rho_bar)?.solve(qp, theta, cfg))
}

/// Exact solution of a strictly convex QP by enumerating active sets of
/// size at most `n` and accepting the first whose KKT point is primal
/// feasible with nonnegative multipliers.
pub fn qp_reference_solve(qp: &QpProblem, theta: &[f64]) -> Result<(Vec<f64>, f64)> {
    qp.check_theta(theta)?;
    let (n, q) = (qp.n(), qp.rows());
    if n > MAX_ENUM_VARS || q > MAX_ENUM_ROWS {
        return Err(GlisError::EnumerationBoundExceeded { n, q });
    }
    let lin = qp.linear_term(theta);
    let rhs = qp.rhs(theta);
    let tol = 1e-9 * (1.0 + rhs.iter().fold(0.0f64, |m, v| m.max(v.abs())));
    let mut active: Vec<usize> = Vec::with_capacity(n);
    for size in 0..=n.min(q) {
        let mut found = None;
        for_each_subset(q, size, &mut active, &mut |w| {
            let k = w.len();
            let mut kkt = DenseMatrix::zeros(n + k, n + k);
            kkt.view_mut((0, 0), (n, n)).copy_from(&qp.q);
            let mut r = vec![0.0; n + k];
            for i in 0..n {
                r[i] = -lin[i];
            }
            for (t, &row) in w.iter().enumerate() {
                for j in 0..n {
                    kkt[(n + t, j)] = qp.a[(row, j)];
                    kkt[(j, n + t)] = qp.a[(row, j)];
                }
                r[n + t] = rhs[row];
            }
            let Some(sol) = lu_solve(&kkt, &r) else {
                return false;
            };
            let z = &sol[..n];
            if sol[n..].iter().any(|&l| l < -tol) {
                return false;
            }
            if (0..q).any(|i| dot(qp.a.row(i).iter(), z) > rhs[i] + tol) {
                return false;
            }
            found = Some(z.to_vec());
            true
        });
        if let Some(z) = found {
            let obj = qp.objective(&z, theta);
            return Ok((z, obj));
        }
    }
    Err(GlisError::Infeasible)
}

/// Calls `f` on every `size`-subset of `0..q` in lexicographic order until
/// it returns `true`.
fn for_each_subset(q: usize, size: usize, buf: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    fn rec(start: usize, q: usize, size: usize, buf: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if buf.len() == size {
            return f(buf);
        }
        for i in start..=q - (size - buf.len()) {
            buf.push(i);
            let stop = rec(i + 1, q, size, buf, f);
            buf.pop();
            if stop {
                return true;
            }
        }
        false
    }
    buf.clear();
    rec(0, q, size, buf, f)
}

/// Tuning objective over `(ρ̄, ᾱ)` for a fixed set of parameter samples.
#[derive(Debug)]
pub struct AdmmBenchmark {
    pub qp: QpProblem,
    pub thetas: Vec<Vec<f64>>,
    pub iterations: usize,
    pub beta_bar: f64,
    reference: OnceLock<Vec<f64>>,
}

impl AdmmBenchmark {
    /// `m` samples of `θ` uniform in `[-1, 1]^p` drawn from `seed`.
    pub fn new(qp: QpProblem, m: usize, iterations: usize, seed: u64) -> Result<Self> {
        if m == 0 {
            return Err(GlisError::InvalidConfig("need at least one θ sample".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = qp.params();
        let thetas = (0..m).map(|_| (0..p).map(|_| 2.0 * rng.random::<f64>() - 1.0).collect()).collect();
        Ok(Self { qp, thetas, iterations, beta_bar: 1.0, reference: OnceLock::new() })
    }

    /// Exact optimal values `φ*(θⱼ)`, computed on first use.
    pub fn reference_values(&self) -> Result<&[f64]> {
        if let Some(r) = self.reference.get() {
            return Ok(r);
        }
        let vals = self
            .thetas
            .iter()
            .map(|t| qp_reference_solve(&self.qp, t).map(|(_, v)| v))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.reference.get_or_init(|| vals))
    }

    /// Performance of `x = (ρ̄, ᾱ)`; lower is better.
    pub fn performance(&self, x: &[f64]) -> Result<f64> {
        admm_performance(x, &self.qp, &self.thetas, self.reference_values()?, self.beta_bar, self.iterations)
    }
}

/// `log` of the mean over samples `j` of the relative suboptimality
/// `max{(φⱼ − φ*ⱼ)/(1 + |φ*ⱼ|), 0}` plus `β̄` times the relative violation
/// `max{maxᵢ (Aᵢzⱼ − bᵢ − Sᵢθⱼ)/(1 + |bᵢ + Sᵢθⱼ|), 0}`, where `zⱼ, φⱼ` come
/// from `iterations` ADMM steps with `(ρ̄, ᾱ) = x`. The mean is floored at
/// [`PERFORMANCE_FLOOR`].
pub fn admm_performance(
    x: &[f64],
    qp: &QpProblem,
    thetas: &[Vec<f64>],
    reference: &[f64],
    beta_bar: f64,
    iterations: usize,
) -> Result<f64> {
    if x.len() != 2 || thetas.len() != reference.len() || thetas.is_empty() {
        return Err(GlisError::DimensionMismatch("ADMM performance inputs".into()));
    }
    let cfg = AdmmConfig { rho_bar: x[0], alpha_bar: x[1], iterations };
    cfg.validate()?;
    let factor = AdmmFactor::new(qp, cfg.rho_bar)?;
    let mut total = 0.0;
    for (theta, &phi_ref) in thetas.iter().zip(reference) {
        qp.check_theta(theta)?;
        let (z, phi) = factor.solve(qp, theta, &cfg);
        let rhs = qp.rhs(theta);
        let opt = ((phi - phi_ref) / (1.0 + phi_ref.abs())).max(0.0);
        let viol = (0..qp.rows())
            .map(|i| (dot(qp.a.row(i).iter(), &z) - rhs[i]) / (1.0 + rhs[i].abs()))
            .fold(0.0f64, f64::max);
        let term = opt + beta_bar * viol;
        total += if term.is_nan() { TERM_CAP } else { term.min(TERM_CAP) };
    }
    Ok((total / thetas.len() as f64).max(PERFORMANCE_FLOOR).ln())
}
