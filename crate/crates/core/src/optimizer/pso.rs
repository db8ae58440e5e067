use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{GlisError, Result};

/// Global-best particle swarm settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsoConfig {
    pub swarm_size: usize,
    pub iterations: usize,
    pub inertia: f64,
    pub cognitive: f64,
    pub social: f64,
    pub seed: u64,
}

impl PsoConfig {
    /// Constriction-factor defaults: 30 particles, `min(200 n, 2000)` iterations.
    pub fn for_dim(n: usize) -> Self {
        Self {
            swarm_size: 30,
            iterations: (200 * n.max(1)).min(2000),
            inertia: 0.729,
            cognitive: 1.494,
            social: 1.494,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.swarm_size < 2 || self.iterations < 1 {
            return Err(GlisError::InvalidConfig(format!(
                "PSO needs swarm_size >= 2 and iterations >= 1, got {} and {}",
                self.swarm_size, self.iterations
            )));
        }
        if ![self.inertia, self.cognitive, self.social].iter().all(|v| v.is_finite()) {
            return Err(GlisError::NonFinite("PSO coefficients"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct PsoResult {
    pub x: Vec<f64>,
    pub value: f64,
    /// Personal best position of every particle at termination.
    pub population: Vec<Vec<f64>>,
}

/// Minimizes `objective` over the box `[lower, upper]`.
///
/// Non-finite objective values are treated as `+∞`. Particles leaving the
/// box are clamped to it and lose the offending velocity component.
pub fn pso_minimize(
    mut objective: impl FnMut(&[f64]) -> f64,
    lower: &[f64],
    upper: &[f64],
    cfg: &PsoConfig,
) -> Result<PsoResult> {
    cfg.validate()?;
    let n = lower.len();
    if upper.len() != n || n == 0 {
        return Err(GlisError::DimensionMismatch(format!("lower {}, upper {}", n, upper.len())));
    }
    if lower.iter().chain(upper).any(|v| !v.is_finite()) || lower.iter().zip(upper).any(|(l, u)| l > u) {
        return Err(GlisError::InvalidConfig("PSO needs a bounded, nonempty box".into()));
    }
    let width: Vec<f64> = lower.iter().zip(upper).map(|(l, u)| u - l).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut eval = |x: &[f64]| {
        let v = objective(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let m = cfg.swarm_size;
    let mut pos: Vec<Vec<f64>> = (0..m)
        .map(|_| (0..n).map(|j| lower[j] + rng.random::<f64>() * width[j]).collect())
        .collect();
    let mut vel: Vec<Vec<f64>> = (0..m)
        .map(|_| (0..n).map(|j| (2.0 * rng.random::<f64>() - 1.0) * width[j]).collect())
        .collect();
    let mut best_pos = pos.clone();
    let mut best_val: Vec<f64> = pos.iter().map(|p| eval(p)).collect();
    let g0 = (0..m).fold(0, |g, i| if best_val[i] < best_val[g] { i } else { g });
    let mut g_pos = best_pos[g0].clone();
    let mut g_val = best_val[g0];

    for _ in 0..cfg.iterations {
        for i in 0..m {
            for j in 0..n {
                let r1: f64 = rng.random();
                let r2: f64 = rng.random();
                let mut v = cfg.inertia * vel[i][j]
                    + cfg.cognitive * r1 * (best_pos[i][j] - pos[i][j])
                    + cfg.social * r2 * (g_pos[j] - pos[i][j]);
                v = v.clamp(-width[j], width[j]);
                let mut x = pos[i][j] + v;
                if x < lower[j] {
                    x = lower[j];
                    v = 0.0;
                } else if x > upper[j] {
                    x = upper[j];
                    v = 0.0;
                }
                pos[i][j] = x;
                vel[i][j] = v;
            }
            let f = eval(&pos[i]);
            if f < best_val[i] {
                best_val[i] = f;
                best_pos[i].copy_from_slice(&pos[i]);
                if f < g_val {
                    g_val = f;
                    g_pos.copy_from_slice(&pos[i]);
                }
            }
        }
    }
    Ok(PsoResult { x: g_pos, value: g_val, population: best_pos })
}
