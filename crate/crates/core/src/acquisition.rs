//! Exploration terms and the acquisition function `a = f̂ − α s − δ ΔF z`.

use std::f64::consts::FRAC_2_PI;

use crate::error::{GlisError, Result};
use crate::problem::ProblemSpec;
use crate::surrogate::{IdwWeightKind, IdwWeights, SampleSet, Surrogate};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AcquisitionParams {
    /// Weight of the IDW variance `s`.
    pub alpha: f64,
    /// Weight of the IDW distance `z`.
    pub delta: f64,
    /// Lower bound on the sample range `ΔF`.
    pub eps_delta_f: f64,
    /// Weights used inside `s`.
    pub variance_kind: IdwWeightKind,
    /// Weights used inside `z`.
    pub distance_kind: IdwWeightKind,
    /// Constraint penalty factor `ρ`.
    pub penalty_rho: f64,
}

impl Default for AcquisitionParams {
    fn default() -> Self {
        Self {
            alpha: 0.8215,
            delta: 2.6788,
            eps_delta_f: 1e-6,
            variance_kind: IdwWeightKind::InverseSquared,
            distance_kind: IdwWeightKind::InverseSquared,
            penalty_rho: 1000.0,
        }
    }
}

impl AcquisitionParams {
    pub fn validate(&self) -> Result<()> {
        let ok = self.alpha >= 0.0
            && self.delta >= 0.0
            && self.eps_delta_f > 0.0
            && self.penalty_rho > 0.0
            && [self.alpha, self.delta, self.eps_delta_f, self.penalty_rho].iter().all(|v| v.is_finite());
        if ok {
            Ok(())
        } else {
            Err(GlisError::InvalidConfig(format!("invalid acquisition parameters {self:?}")))
        }
    }
}

/// `ΔF = max{max F − min F, ε_ΔF}`.
pub fn delta_f(samples: &SampleSet, eps_delta_f: f64) -> f64 {
    (samples.max_value() - samples.min_value()).max(eps_delta_f)
}

fn variance_from(weights: &IdwWeights, values: &[f64], fhat: f64) -> f64 {
    weights.average_by(values, |f| (f - fhat) * (f - fhat)).max(0.0).sqrt()
}

fn distance_from(weights: &IdwWeights) -> f64 {
    FRAC_2_PI * weights.inverse_weight_sum().atan()
}

/// IDW variance `s(x) = sqrt(Σ vᵢ(x) (fᵢ − f̂(x))²)`.
pub fn idw_variance(samples: &SampleSet, surrogate_value: f64, x: &[f64], kind: IdwWeightKind) -> f64 {
    let d2 = samples.squared_distances(x);
    variance_from(&IdwWeights::compute(samples, x, &d2, kind), samples.values(), surrogate_value)
}

/// IDW distance `z(x) = (2/π) atan(1 / Σ wᵢ(x))`, zero at samples.
pub fn idw_distance(samples: &SampleSet, x: &[f64], kind: IdwWeightKind) -> f64 {
    let d2 = samples.squared_distances(x);
    distance_from(&IdwWeights::compute(samples, x, &d2, kind))
}

/// The three ingredients of `a(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AcquisitionTerms {
    pub surrogate: f64,
    pub variance: f64,
    pub distance: f64,
}

/// Acquisition bound to one surrogate; `ΔF` is computed once.
#[derive(Debug, Clone, Copy)]
pub struct Acquisition<'a> {
    surrogate: &'a Surrogate,
    params: &'a AcquisitionParams,
    delta_f: f64,
}

impl<'a> Acquisition<'a> {
    pub fn new(surrogate: &'a Surrogate, params: &'a AcquisitionParams) -> Self {
        let delta_f = delta_f(surrogate.samples(), params.eps_delta_f);
        Self { surrogate, params, delta_f }
    }

    pub fn delta_f(&self) -> f64 {
        self.delta_f
    }

    pub fn terms(&self, x: &[f64]) -> AcquisitionTerms {
        let samples = self.surrogate.samples();
        let d2 = samples.squared_distances(x);
        let fhat = self.surrogate.predict_with(x, &d2);
        let need_s = self.params.alpha != 0.0;
        let need_z = self.params.delta != 0.0;
        let (mut variance, mut distance) = (0.0, 0.0);
        if need_s || need_z {
            let wv = IdwWeights::compute(samples, x, &d2, self.params.variance_kind);
            if need_s {
                variance = variance_from(&wv, samples.values(), fhat);
            }
            if need_z {
                distance = if self.params.distance_kind == self.params.variance_kind {
                    distance_from(&wv)
                } else {
                    distance_from(&IdwWeights::compute(samples, x, &d2, self.params.distance_kind))
                };
            }
        }
        AcquisitionTerms { surrogate: fhat, variance, distance }
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        let t = self.terms(x);
        t.surrogate - self.params.alpha * t.variance - self.params.delta * self.delta_f * t.distance
    }

    /// `a(x) + ρ ΔF · penalty`, where `penalty = Σ max{gᵢ, 0}²`.
    pub fn penalized(&self, x: &[f64], penalty: f64) -> f64 {
        self.value(x) + self.params.penalty_rho * self.delta_f * penalty
    }
}

/// `a(x) = f̂(x) − α s(x) − δ ΔF z(x)`.
pub fn acquisition(surrogate: &Surrogate, x: &[f64], params: &AcquisitionParams) -> f64 {
    Acquisition::new(surrogate, params).value(x)
}

/// `a(x) + ρ ΔF Σ max{gᵢ(x), 0}²` with the constraints of `spec`; `x` is in
/// the same coordinates as `spec`.
pub fn penalized_acquisition(surrogate: &Surrogate, x: &[f64], params: &AcquisitionParams, spec: &ProblemSpec) -> f64 {
    Acquisition::new(surrogate, params).penalized(x, spec.penalty(x))
}
