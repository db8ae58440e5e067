//! Inverse distance weighting and radial basis function interpolation.

use std::fmt;
use std::str::FromStr;

use crate::error::{GlisError, Result};
use crate::numerics::{svd_truncated_solve, DenseMatrix};

/// Squared distances below this are floored before inverting.
const MIN_SQ_DIST: f64 = 1e-24;

/// Evaluated points `X` (one row per sample) and their objective values `F`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    dim: usize,
    points: Vec<f64>,
    values: Vec<f64>,
}

impl SampleSet {
    pub fn new(dim: usize) -> Self {
        Self { dim, points: Vec::new(), values: Vec::new() }
    }

    pub fn from_points(dim: usize, points: &[Vec<f64>], values: &[f64]) -> Result<Self> {
        if points.len() != values.len() {
            return Err(GlisError::DimensionMismatch(format!("{} points, {} values", points.len(), values.len())));
        }
        let mut s = Self::new(dim);
        for (p, &v) in points.iter().zip(values) {
            s.push(p, v)?;
        }
        Ok(s)
    }

    pub fn from_matrix(x: &DenseMatrix, values: &[f64]) -> Result<Self> {
        let rows: Vec<Vec<f64>> = x.row_iter().map(|r| r.iter().copied().collect()).collect();
        Self::from_points(x.ncols(), &rows, values)
    }

    /// Appends a sample. Rejects wrong dimension, non-finite data and exact
    /// duplicates of an existing point.
    pub fn push(&mut self, x: &[f64], f: f64) -> Result<()> {
        if x.len() != self.dim {
            return Err(GlisError::DimensionMismatch(format!("point of length {}, expected {}", x.len(), self.dim)));
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(GlisError::NonFinite("sample point"));
        }
        if !f.is_finite() {
            return Err(GlisError::NonFinite("sample value"));
        }
        if self.contains(x) {
            return Err(GlisError::DuplicatePoint);
        }
        self.points.extend_from_slice(x);
        self.values.push(f);
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = &[f64]> {
        self.points.chunks_exact(self.dim.max(1)).take(self.values.len())
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Index of the sample whose coordinates equal `x` exactly.
    pub fn position(&self, x: &[f64]) -> Option<usize> {
        self.points().position(|p| p == x)
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.position(x).is_some()
    }

    pub fn to_matrix(&self) -> DenseMatrix {
        DenseMatrix::from_row_slice(self.len(), self.dim, &self.points)
    }

    /// Squared Euclidean distances from `x` to every sample.
    pub fn squared_distances(&self, x: &[f64]) -> Vec<f64> {
        self.points().map(|p| squared_distance(p, x)).collect()
    }
}

pub fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| (p - q) * (p - q)).sum()
}

/// IDW weight function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IdwWeightKind {
    /// `w = 1/d²`
    #[default]
    InverseSquared,
    /// `w = e^{−d²}/d²`
    ExpInverseSquared,
}

impl IdwWeightKind {
    fn weight_sq(self, d2: f64) -> f64 {
        match self {
            IdwWeightKind::InverseSquared => 1.0 / d2,
            IdwWeightKind::ExpInverseSquared => (-d2).exp() / d2,
        }
    }
}

/// `wᵢ(x)` for `x ≠ xᵢ`.
pub fn idw_weight(x: &[f64], xi: &[f64], kind: IdwWeightKind) -> Result<f64> {
    if x == xi {
        return Err(GlisError::CoincidentPoint);
    }
    Ok(kind.weight_sq(squared_distance(x, xi).max(MIN_SQ_DIST)))
}

/// IDW weights of all samples at one query point.
#[derive(Debug, Clone)]
pub(crate) enum IdwWeights {
    /// The query equals sample `i`.
    Coincident(usize),
    /// `raw[i] = wᵢ(x)·e^{log_scale}`; the common factor keeps exponential
    /// weights representable far from the samples.
    Spread { raw: Vec<f64>, raw_sum: f64, log_scale: f64 },
}

impl IdwWeights {
    pub(crate) fn compute(samples: &SampleSet, x: &[f64], d2: &[f64], kind: IdwWeightKind) -> Self {
        for (i, &d) in d2.iter().enumerate() {
            if d == 0.0 && samples.point(i) == x {
                return IdwWeights::Coincident(i);
            }
        }
        let log_scale = match kind {
            IdwWeightKind::InverseSquared => 0.0,
            IdwWeightKind::ExpInverseSquared => d2.iter().copied().fold(f64::INFINITY, f64::min).max(MIN_SQ_DIST),
        };
        let raw: Vec<f64> = d2
            .iter()
            .map(|&d| {
                let d = d.max(MIN_SQ_DIST);
                match kind {
                    IdwWeightKind::InverseSquared => 1.0 / d,
                    IdwWeightKind::ExpInverseSquared => (log_scale - d).exp() / d,
                }
            })
            .collect();
        let raw_sum = raw.iter().sum();
        IdwWeights::Spread { raw, raw_sum, log_scale }
    }

    /// Normalized weight `vᵢ(x)`.
    pub(crate) fn v(&self, i: usize) -> f64 {
        match self {
            IdwWeights::Coincident(j) => f64::from(u8::from(*j == i)),
            IdwWeights::Spread { raw, raw_sum, .. } => raw[i] / raw_sum,
        }
    }

    /// `1 / Σ wᵢ(x)`, zero at a sample.
    pub(crate) fn inverse_weight_sum(&self) -> f64 {
        match self {
            IdwWeights::Coincident(_) => 0.0,
            IdwWeights::Spread { raw_sum, log_scale, .. } => log_scale.exp() / raw_sum,
        }
    }

    /// `Σ vᵢ(x) yᵢ`, held inside `[min y, max y]` against rounding.
    pub(crate) fn average(&self, y: &[f64]) -> f64 {
        let (lo, hi) = y.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| (l.min(v), h.max(v)));
        self.average_by(y, |v| v).clamp(lo, hi)
    }

    /// `Σ vᵢ(x) h(yᵢ)`.
    pub(crate) fn average_by(&self, y: &[f64], h: impl Fn(f64) -> f64) -> f64 {
        match self {
            IdwWeights::Coincident(j) => h(y[*j]),
            IdwWeights::Spread { raw, raw_sum, .. } => {
                raw.iter().zip(y).map(|(w, &v)| w * h(v)).sum::<f64>() / raw_sum
            }
        }
    }
}

/// Normalized weights `vᵢ(x)`; they sum to one.
pub fn idw_normalized_weights(samples: &SampleSet, x: &[f64], kind: IdwWeightKind) -> Vec<f64> {
    let w = IdwWeights::compute(samples, x, &samples.squared_distances(x), kind);
    (0..samples.len()).map(|i| w.v(i)).collect()
}

/// IDW interpolant `f̂(x) = Σ vᵢ(x) fᵢ`.
pub fn idw_predict(samples: &SampleSet, x: &[f64], kind: IdwWeightKind) -> f64 {
    let d2 = samples.squared_distances(x);
    IdwWeights::compute(samples, x, &d2, kind).average(samples.values())
}

/// Radial basis function `φ(εd)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RbfKernel {
    InverseQuadratic,
    Gaussian,
    Multiquadric,
    ThinPlateSpline,
    Linear,
    InverseMultiquadric,
}

impl RbfKernel {
    pub const ALL: [RbfKernel; 6] = [
        RbfKernel::InverseQuadratic,
        RbfKernel::Gaussian,
        RbfKernel::Multiquadric,
        RbfKernel::ThinPlateSpline,
        RbfKernel::Linear,
        RbfKernel::InverseMultiquadric,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RbfKernel::InverseQuadratic => "inverse_quadratic",
            RbfKernel::Gaussian => "gaussian",
            RbfKernel::Multiquadric => "multiquadric",
            RbfKernel::ThinPlateSpline => "thin_plate_spline",
            RbfKernel::Linear => "linear",
            RbfKernel::InverseMultiquadric => "inverse_multiquadric",
        }
    }

    /// `φ` as a function of `r² = (εd)²`.
    #[inline]
    pub(crate) fn eval_sq(self, r2: f64) -> f64 {
        match self {
            RbfKernel::InverseQuadratic => 1.0 / (1.0 + r2),
            RbfKernel::Gaussian => (-r2).exp(),
            RbfKernel::Multiquadric => (1.0 + r2).sqrt(),
            RbfKernel::ThinPlateSpline => {
                // r² log r, with the limit value 0 at r = 0
                if r2 < f64::MIN_POSITIVE {
                    0.0
                } else {
                    0.5 * r2 * r2.ln()
                }
            }
            RbfKernel::Linear => r2.sqrt(),
            RbfKernel::InverseMultiquadric => 1.0 / (1.0 + r2).sqrt(),
        }
    }
}

impl fmt::Display for RbfKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RbfKernel {
    type Err = GlisError;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace(['-', ' '], "_");
        match norm.as_str() {
            "inverse_quadratic" | "iq" => Ok(RbfKernel::InverseQuadratic),
            "gaussian" => Ok(RbfKernel::Gaussian),
            "multiquadric" => Ok(RbfKernel::Multiquadric),
            "thin_plate_spline" | "thin_plate" | "tps" => Ok(RbfKernel::ThinPlateSpline),
            "linear" => Ok(RbfKernel::Linear),
            "inverse_multiquadric" => Ok(RbfKernel::InverseMultiquadric),
            _ => Err(GlisError::InvalidConfig(format!(
                "unknown RBF kernel `{s}`; expected one of {}",
                RbfKernel::ALL.map(RbfKernel::name).join(", ")
            ))),
        }
    }
}

/// Kernel choice together with its shape parameter `ε`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RbfKind {
    pub kernel: RbfKernel,
    pub epsilon: f64,
}

impl RbfKind {
    pub fn new(kernel: RbfKernel, epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(GlisError::InvalidConfig(format!("RBF epsilon must be positive, got {epsilon}")));
        }
        Ok(Self { kernel, epsilon })
    }

    #[inline]
    fn eval_d2(&self, d2: f64) -> f64 {
        self.kernel.eval_sq(self.epsilon * self.epsilon * d2)
    }
}

/// `φ(εd)` for `d ≥ 0`.
pub fn rbf_kernel(kind: RbfKind, d: f64) -> f64 {
    let r = kind.epsilon * d;
    kind.kernel.eval_sq(r * r)
}

/// Fitted RBF interpolant `f̂(x) = Σ βᵢ φ(ε d(x, xᵢ))`.
#[derive(Debug, Clone)]
pub struct RbfModel {
    kind: RbfKind,
    samples: SampleSet,
    beta: Vec<f64>,
    eps_svd: f64,
    kernel_matrix: DenseMatrix,
    /// Sample indices in lexicographic order of the points. Solving and
    /// summing in this order makes the model independent of arrival order.
    order: Vec<usize>,
}

fn lexicographic_order(samples: &SampleSet) -> Vec<usize> {
    let mut order: Vec<usize> = (0..samples.len()).collect();
    order.sort_by(|&a, &b| {
        samples
            .point(a)
            .iter()
            .zip(samples.point(b))
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    order
}

fn solve_in_order(m: &DenseMatrix, values: &[f64], order: &[usize], eps_svd: f64) -> Result<Vec<f64>> {
    let n = order.len();
    let mp = DenseMatrix::from_fn(n, n, |i, j| m[(order[i], order[j])]);
    let rhs: Vec<f64> = order.iter().map(|&i| values[i]).collect();
    let bp = svd_truncated_solve(&mp, &rhs, eps_svd)?;
    let mut beta = vec![0.0; n];
    for (k, &i) in order.iter().enumerate() {
        beta[i] = bp[k];
    }
    Ok(beta)
}

impl RbfModel {
    pub fn fit(samples: SampleSet, kind: RbfKind, eps_svd: f64) -> Result<Self> {
        if samples.is_empty() {
            return Err(GlisError::InvalidConfig("RBF fit needs at least one sample".into()));
        }
        let n = samples.len();
        let mut m = DenseMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = kind.eval_d2(0.0);
            for j in 0..i {
                let v = kind.eval_d2(squared_distance(samples.point(i), samples.point(j)));
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        let order = lexicographic_order(&samples);
        let beta = solve_in_order(&m, samples.values(), &order, eps_svd)?;
        Ok(Self { kind, samples, beta, eps_svd, kernel_matrix: m, order })
    }

    /// New model with one extra sample; the kernel matrix is grown by one
    /// row and column instead of being rebuilt.
    pub fn update(&self, x_new: &[f64], f_new: f64) -> Result<Self> {
        let mut samples = self.samples.clone();
        samples.push(x_new, f_new)?;
        let n = self.samples.len();
        let mut m = self.kernel_matrix.clone().resize(n + 1, n + 1, 0.0);
        for j in 0..n {
            let v = self.kind.eval_d2(squared_distance(x_new, self.samples.point(j)));
            m[(n, j)] = v;
            m[(j, n)] = v;
        }
        m[(n, n)] = self.kind.eval_d2(0.0);
        let order = lexicographic_order(&samples);
        let beta = solve_in_order(&m, samples.values(), &order, self.eps_svd)?;
        Ok(Self { kind: self.kind, samples, beta, eps_svd: self.eps_svd, kernel_matrix: m, order })
    }

    pub fn predict(&self, x: &[f64]) -> f64 {
        self.order
            .iter()
            .map(|&i| self.beta[i] * self.kind.eval_d2(squared_distance(self.samples.point(i), x)))
            .sum()
    }

    /// Prediction from precomputed squared distances to the samples.
    pub(crate) fn predict_from_d2(&self, d2: &[f64]) -> f64 {
        self.order.iter().map(|&i| self.beta[i] * self.kind.eval_d2(d2[i])).sum()
    }

    pub fn kind(&self) -> RbfKind {
        self.kind
    }

    pub fn samples(&self) -> &SampleSet {
        &self.samples
    }

    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    pub fn eps_svd(&self) -> f64 {
        self.eps_svd
    }

    pub fn kernel_matrix(&self) -> &DenseMatrix {
        &self.kernel_matrix
    }
}

pub fn rbf_fit(samples: &SampleSet, kind: RbfKind, eps_svd: f64) -> Result<RbfModel> {
    RbfModel::fit(samples.clone(), kind, eps_svd)
}

pub fn rbf_update(model: &RbfModel, x_new: &[f64], f_new: f64) -> Result<RbfModel> {
    model.update(x_new, f_new)
}

pub fn rbf_predict(model: &RbfModel, x: &[f64]) -> f64 {
    model.predict(x)
}

/// IDW interpolant over a sample set.
#[derive(Debug, Clone)]
pub struct IdwModel {
    pub kind: IdwWeightKind,
    pub samples: SampleSet,
}

/// Either surrogate family behind one interface.
#[derive(Debug, Clone)]
pub enum Surrogate {
    Rbf(RbfModel),
    Idw(IdwModel),
}

impl Surrogate {
    pub fn samples(&self) -> &SampleSet {
        match self {
            Surrogate::Rbf(m) => m.samples(),
            Surrogate::Idw(m) => &m.samples,
        }
    }

    pub fn predict(&self, x: &[f64]) -> f64 {
        match self {
            Surrogate::Rbf(m) => m.predict(x),
            Surrogate::Idw(m) => idw_predict(&m.samples, x, m.kind),
        }
    }

    pub(crate) fn predict_with(&self, x: &[f64], d2: &[f64]) -> f64 {
        match self {
            Surrogate::Rbf(m) => m.predict_from_d2(d2),
            Surrogate::Idw(m) => IdwWeights::compute(&m.samples, x, d2, m.kind).average(m.samples.values()),
        }
    }

    pub fn update(&self, x: &[f64], f: f64) -> Result<Self> {
        Ok(match self {
            Surrogate::Rbf(m) => Surrogate::Rbf(m.update(x, f)?),
            Surrogate::Idw(m) => {
                let mut samples = m.samples.clone();
                samples.push(x, f)?;
                Surrogate::Idw(IdwModel { kind: m.kind, samples })
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::f_1d;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn idw_weight_values() {
        let k = IdwWeightKind::InverseSquared;
        assert_eq!(idw_weight(&[1.0, 0.0], &[0.0, 0.0], k).unwrap(), 1.0);
        let e = IdwWeightKind::ExpInverseSquared;
        assert!(close(idw_weight(&[1.0], &[0.0], e).unwrap(), 0.367879441171442, 1e-15));
        assert!(close(idw_weight(&[2.0], &[0.0], e).unwrap(), (-4.0f64).exp() / 4.0, 1e-18));
        assert!(matches!(idw_weight(&[1.0], &[1.0], k), Err(GlisError::CoincidentPoint)));
    }

    fn five_samples() -> SampleSet {
        let xs = [-2.5, -1.2, 0.1, 1.3, 2.7];
        let pts: Vec<Vec<f64>> = xs.iter().map(|&x| vec![x]).collect();
        let fs: Vec<f64> = xs.iter().map(|&x| f_1d(x)).collect();
        SampleSet::from_points(1, &pts, &fs).unwrap()
    }

    #[test]
    fn idw_exact_at_samples_and_symmetric() {
        let s = five_samples();
        for kind in [IdwWeightKind::InverseSquared, IdwWeightKind::ExpInverseSquared] {
            assert_eq!(idw_predict(&s, &[1.3], kind), s.values()[3]);
        }
        let two = SampleSet::from_points(1, &[vec![-1.0], vec![1.0]], &[2.0, 4.0]).unwrap();
        assert_eq!(idw_predict(&two, &[0.0], IdwWeightKind::InverseSquared), 3.0);
    }

    #[test]
    fn idw_matches_direct_formula() {
        let s = five_samples();
        let x = 0.6;
        for kind in [IdwWeightKind::InverseSquared, IdwWeightKind::ExpInverseSquared] {
            let w: Vec<f64> = s
                .points()
                .map(|p| {
                    let d2 = (p[0] - x) * (p[0] - x);
                    match kind {
                        IdwWeightKind::InverseSquared => 1.0 / d2,
                        IdwWeightKind::ExpInverseSquared => (-d2).exp() / d2,
                    }
                })
                .collect();
            let direct: f64 = w.iter().zip(s.values()).map(|(a, b)| a * b).sum::<f64>() / w.iter().sum::<f64>();
            let got = idw_predict(&s, &[x], kind);
            assert!(close(got, direct, 1e-13), "{got} vs {direct}");
            assert!(got >= s.min_value() && got <= s.max_value());
        }
    }

    #[test]
    fn idw_far_from_samples_stays_finite() {
        let s = SampleSet::from_points(1, &[vec![0.0], vec![1.0]], &[1.0, 3.0]).unwrap();
        let v = idw_predict(&s, &[1e3], IdwWeightKind::ExpInverseSquared);
        assert!(v.is_finite() && (1.0..=3.0).contains(&v));
    }

    #[test]
    fn idw_near_duplicate_is_guarded() {
        let s = SampleSet::from_points(1, &[vec![0.0], vec![1.0]], &[1.0, 3.0]).unwrap();
        let v = idw_predict(&s, &[1e-300], IdwWeightKind::InverseSquared);
        assert!(v.is_finite() && close(v, 1.0, 1e-12));
    }

    #[test]
    fn kernel_values() {
        let iq = RbfKind::new(RbfKernel::InverseQuadratic, 0.7).unwrap();
        assert_eq!(rbf_kernel(iq, 0.0), 1.0);
        let g = RbfKind::new(RbfKernel::Gaussian, 1.0).unwrap();
        assert!(close(rbf_kernel(g, 1.0), (-1.0f64).exp(), 1e-16));
        let tps = RbfKind::new(RbfKernel::ThinPlateSpline, 0.01).unwrap();
        assert!(rbf_kernel(tps, 100.0).abs() < 1e-15);
        assert_eq!(rbf_kernel(tps, 0.0), 0.0);
        let mq = RbfKind::new(RbfKernel::Multiquadric, 1.0).unwrap();
        assert!(close(rbf_kernel(mq, 1.0), 2f64.sqrt(), 1e-15));
        let lin = RbfKind::new(RbfKernel::Linear, 2.0).unwrap();
        assert!(close(rbf_kernel(lin, 1.5), 3.0, 1e-15));
        let imq = RbfKind::new(RbfKernel::InverseMultiquadric, 1.0).unwrap();
        assert!(close(rbf_kernel(imq, 1.0), 1.0 / 2f64.sqrt(), 1e-15));
        assert!(RbfKind::new(RbfKernel::Gaussian, 0.0).is_err());
    }

    #[test]
    fn kernel_matrix_diagonal() {
        let s = five_samples();
        for kernel in RbfKernel::ALL {
            let m = rbf_fit(&s, RbfKind::new(kernel, 0.5).unwrap(), 1e-6).unwrap();
            let expected = match kernel {
                RbfKernel::Linear | RbfKernel::ThinPlateSpline => 0.0,
                _ => 1.0,
            };
            for i in 0..s.len() {
                assert_eq!(m.kernel_matrix()[(i, i)], expected, "{kernel}");
            }
        }
    }

    #[test]
    fn single_sample_fit() {
        let s = SampleSet::from_points(2, &[vec![0.3, 0.1]], &[4.2]).unwrap();
        let m = rbf_fit(&s, RbfKind::new(RbfKernel::InverseQuadratic, 1.0).unwrap(), 1e-6).unwrap();
        assert!(close(m.beta()[0], 4.2, 1e-14));
    }

    #[test]
    fn symmetric_pair_has_equal_coefficients() {
        let s = SampleSet::from_points(1, &[vec![-0.5], vec![0.5]], &[1.0, 1.0]).unwrap();
        let m = rbf_fit(&s, RbfKind::new(RbfKernel::Gaussian, 1.0).unwrap(), 1e-6).unwrap();
        assert!(close(m.beta()[0], m.beta()[1], 1e-14));
    }

    #[test]
    fn five_sample_interpolation_residual() {
        let s = five_samples();
        let m = rbf_fit(&s, RbfKind::new(RbfKernel::InverseQuadratic, 0.5).unwrap(), 1e-12).unwrap();
        for (p, f) in s.points().zip(s.values()) {
            assert!(close(m.predict(p), *f, 1e-8));
        }
    }

    #[test]
    fn update_grows_matrix_and_interpolates() {
        let s = five_samples();
        let kind = RbfKind::new(RbfKernel::Gaussian, 1.0).unwrap();
        let m = rbf_fit(&s, kind, 1e-12).unwrap();
        let m2 = m.update(&[0.7], 5.0).unwrap();
        assert_eq!(m2.kernel_matrix().nrows(), 6);
        assert!(close(m2.predict(&[0.7]), 5.0, 1e-6));
        assert!(matches!(m2.update(&[0.7], 1.0), Err(GlisError::DuplicatePoint)));
        assert_eq!(m.samples().len(), 5);
    }

    #[test]
    fn zero_coefficients_predict_zero() {
        let s = SampleSet::from_points(1, &[vec![0.0], vec![1.0]], &[0.0, 0.0]).unwrap();
        let m = rbf_fit(&s, RbfKind::new(RbfKernel::Multiquadric, 1.0).unwrap(), 1e-6).unwrap();
        assert!(m.beta().iter().all(|b| *b == 0.0));
        assert_eq!(m.predict(&[0.37]), 0.0);
    }

    #[test]
    fn sample_set_rejects_bad_points() {
        let mut s = SampleSet::new(2);
        s.push(&[0.0, 1.0], 1.0).unwrap();
        assert!(matches!(s.push(&[0.0, 1.0], 2.0), Err(GlisError::DuplicatePoint)));
        assert!(matches!(s.push(&[0.0], 2.0), Err(GlisError::DimensionMismatch(_))));
        assert!(matches!(s.push(&[0.0, 2.0], f64::NAN), Err(GlisError::NonFinite(_))));
    }

    #[test]
    fn kernel_names_round_trip() {
        for k in RbfKernel::ALL {
            assert_eq!(k.name().parse::<RbfKernel>().unwrap(), k);
        }
        assert!("cubic".parse::<RbfKernel>().is_err());
    }
}
