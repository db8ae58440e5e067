use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::acquisition::{idw_distance, Acquisition, AcquisitionParams};
use crate::error::{GlisError, Result};
use crate::problem::{build_scaling, tighten_bounds, ProblemSpec, ScalingMap};
use crate::sampling::{chebyshev_radius, filtered_lhs, latin_hypercube_rng};
use crate::surrogate::{squared_distance, IdwModel, IdwWeightKind, RbfKernel, RbfKind, RbfModel, SampleSet, Surrogate};

use super::pso::{pso_minimize, PsoConfig};

/// Squared scaled distance below which a suggestion counts as a repeat.
const DUPLICATE_SQ_DIST: f64 = 1e-20;

/// Surrogate family used by the outer loop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SurrogateChoice {
    Rbf(RbfKind),
    Idw(IdwWeightKind),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GlisConfig {
    pub acquisition: AcquisitionParams,
    pub surrogate: SurrogateChoice,
    /// Spectral truncation threshold for the RBF fit.
    pub eps_svd: f64,
    pub n_init: usize,
    pub n_max: usize,
    pub pso: PsoConfig,
    pub seed: u64,
    /// Divide `α`, `δ` and the RBF shape `ε` by the dimension.
    pub divide_hyperparams_by_n: bool,
    /// Constraint violation tolerated when ranking samples.
    pub feasibility_tol: f64,
}

impl GlisConfig {
    /// Defaults for an `n`-dimensional problem: inverse quadratic RBF with
    /// `ε = 1.3296`, `α = 0.8215`, `δ = 2.6788` (each divided by `n`),
    /// `N_init = 2n`, `N_max = 20n`.
    pub fn new(n: usize) -> Self {
        let n = n.max(1);
        Self {
            acquisition: AcquisitionParams::default(),
            surrogate: SurrogateChoice::Rbf(RbfKind { kernel: RbfKernel::InverseQuadratic, epsilon: 1.3296 }),
            eps_svd: 1e-6,
            n_init: 2 * n,
            n_max: 20 * n,
            pso: PsoConfig::for_dim(n),
            seed: 0,
            divide_hyperparams_by_n: true,
            feasibility_tol: 1e-6,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_init < 1 || self.n_max < self.n_init {
            return Err(GlisError::InvalidConfig(format!(
                "need 1 <= n_init <= n_max, got n_init = {}, n_max = {}",
                self.n_init, self.n_max
            )));
        }
        if !(self.eps_svd > 0.0) || !(self.feasibility_tol >= 0.0) {
            return Err(GlisError::InvalidConfig("eps_svd must be positive and feasibility_tol nonnegative".into()));
        }
        if let SurrogateChoice::Rbf(k) = self.surrogate {
            if !(k.epsilon > 0.0 && k.epsilon.is_finite()) {
                return Err(GlisError::InvalidConfig(format!("RBF shape must be positive, got {}", k.epsilon)));
            }
        }
        self.acquisition.validate()?;
        self.pso.validate()
    }

    /// Acquisition parameters and surrogate after the optional division by `n`.
    pub fn effective(&self, n: usize) -> (AcquisitionParams, SurrogateChoice) {
        let mut params = self.acquisition;
        let mut surrogate = self.surrogate;
        if self.divide_hyperparams_by_n {
            let n = n.max(1) as f64;
            params.alpha /= n;
            params.delta /= n;
            if let SurrogateChoice::Rbf(k) = &mut surrogate {
                k.epsilon /= n;
            }
        }
        (params, surrogate)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    /// Initial design points are still being evaluated.
    Initializing,
    Running,
    /// The evaluation budget is spent.
    Finished,
}

/// Ask/tell optimizer state. Samples are stored in scaled coordinates;
/// every point crossing the public interface is in original coordinates.
#[derive(Debug, Clone)]
pub struct GlisState {
    spec: ProblemSpec,
    config: GlisConfig,
    params: AcquisitionParams,
    choice: SurrogateChoice,
    scaling: ScalingMap,
    samples: SampleSet,
    x: Vec<Vec<f64>>,
    violation: Vec<f64>,
    surrogate: Option<Surrogate>,
    pending: Vec<Vec<f64>>,
    best: Option<usize>,
    history: Vec<f64>,
    phase: Phase,
    rng: ChaCha8Rng,
}

impl GlisState {
    /// Tightens the box, builds the scaling and draws the initial design.
    /// No objective evaluations happen here.
    pub fn start(spec: &ProblemSpec, config: &GlisConfig) -> Result<Self> {
        config.validate()?;
        let n = spec.dim();
        let (lower, upper) = tighten_bounds(spec)?;
        if let Some(j) = (0..n).find(|&j| !(lower[j] < upper[j])) {
            return Err(GlisError::DegenerateBox(j));
        }
        let tight = spec.with_bounds(lower, upper);
        let scaling = build_scaling(tight.lower(), tight.upper(), tight.linear())?;
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let (lo, hi) = (vec![-1.0; n], vec![1.0; n]);

        let design = if !tight.eval_outside_feasible() && tight.has_constraints() {
            if tight.linear().is_some() {
                let r = chebyshev_radius(&tight)?;
                if r <= 0.0 {
                    return Err(GlisError::NotFullDimensional(r));
                }
            }
            filtered_lhs(&lo, &hi, config.n_init, &mut rng, |xs| tight.is_feasible(&scaling.to_original(xs), 0.0))?
        } else {
            latin_hypercube_rng(config.n_init, &lo, &hi, &mut rng)
        };
        let pending = (0..design.nrows())
            .map(|i| {
                let xs: Vec<f64> = design.row(i).iter().copied().collect();
                clamp_to_box(scaling.to_original(&xs), &tight)
            })
            .collect();

        let (params, choice) = config.effective(n);
        Ok(Self {
            samples: SampleSet::new(n),
            spec: tight,
            config: config.clone(),
            params,
            choice,
            scaling,
            x: Vec::new(),
            violation: Vec::new(),
            surrogate: None,
            pending,
            best: None,
            history: Vec::new(),
            phase: Phase::Initializing,
            rng,
        })
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    /// Problem with the tightened bounds.
    pub fn spec(&self) -> &ProblemSpec {
        &self.spec
    }

    pub fn config(&self) -> &GlisConfig {
        &self.config
    }

    pub fn scaling(&self) -> &ScalingMap {
        &self.scaling
    }

    /// Samples in scaled coordinates.
    pub fn samples(&self) -> &SampleSet {
        &self.samples
    }

    /// Evaluated points in original coordinates.
    pub fn points(&self) -> &[Vec<f64>] {
        &self.x
    }

    pub fn values(&self) -> &[f64] {
        self.samples.values()
    }

    pub fn surrogate(&self) -> Option<&Surrogate> {
        self.surrogate.as_ref()
    }

    /// Initial design points not yet observed.
    pub fn pending(&self) -> &[Vec<f64>] {
        &self.pending
    }

    pub fn evaluations(&self) -> usize {
        self.samples.len()
    }

    pub fn best_index(&self) -> Option<usize> {
        self.best
    }

    pub fn x_best(&self) -> Option<&[f64]> {
        self.best.map(|i| self.x[i].as_slice())
    }

    pub fn f_best(&self) -> Option<f64> {
        self.best.map(|i| self.samples.values()[i])
    }

    /// Best-so-far objective value after every evaluation.
    pub fn history(&self) -> &[f64] {
        &self.history
    }

    /// Next point to evaluate: the next initial design point, or the
    /// minimizer of the penalized acquisition once the surrogate exists.
    pub fn suggest(&mut self) -> Result<Vec<f64>> {
        match self.phase {
            Phase::Finished => Err(GlisError::InvalidPhase(Phase::Finished)),
            Phase::Initializing => self.pending.first().cloned().ok_or(GlisError::InvalidPhase(Phase::Initializing)),
            Phase::Running => self.suggest_running(),
        }
    }

    fn suggest_running(&mut self) -> Result<Vec<f64>> {
        let surrogate = self.surrogate.as_ref().ok_or(GlisError::InvalidPhase(self.phase))?;
        let n = self.spec.dim();
        let acq = Acquisition::new(surrogate, &self.params);
        let (spec, scaling) = (&self.spec, &self.scaling);
        let penalty = |xs: &[f64]| {
            let mut p = 0.0;
            if let Some(lin) = &scaling.scaled_linear {
                p += lin.residuals(xs).map(|r| r.max(0.0).powi(2)).sum::<f64>();
            }
            if let Some(g) = spec.constraint_fn() {
                p += g(&scaling.to_original(xs)).into_iter().map(|v| v.max(0.0).powi(2)).sum::<f64>();
            }
            p
        };
        let pso = PsoConfig { seed: self.rng.next_u64(), ..self.config.pso };
        let (lo, hi) = (vec![-1.0; n], vec![1.0; n]);
        let res = pso_minimize(|xs| acq.penalized(xs, penalty(xs)), &lo, &hi, &pso)?;

        let samples = &self.samples;
        let is_new = |xs: &[f64]| samples.points().all(|p| squared_distance(p, xs) > DUPLICATE_SQ_DIST);
        let xs = if is_new(&res.x) {
            res.x
        } else {
            let kind = self.params.distance_kind;
            let alt = res
                .population
                .iter()
                .filter(|p| is_new(p))
                .map(|p| (idw_distance(samples, p, kind), p))
                .fold(None, |acc: Option<(f64, &Vec<f64>)>, c| match acc {
                    Some(a) if a.0 >= c.0 => Some(a),
                    _ => Some(c),
                });
            match alt {
                Some((_, p)) => p.clone(),
                None => (0..n).map(|_| 2.0 * self.rng.random::<f64>() - 1.0).collect(),
            }
        };
        Ok(clamp_to_box(self.scaling.to_original(&xs), &self.spec))
    }

    /// Records `f(x)`. `x` must lie in the tightened box and differ from
    /// every earlier sample.
    pub fn observe(&mut self, x: &[f64], f: f64) -> Result<()> {
        if self.phase == Phase::Finished {
            return Err(GlisError::InvalidPhase(Phase::Finished));
        }
        let n = self.spec.dim();
        if x.len() != n {
            return Err(GlisError::DimensionMismatch(format!("x has length {}, n = {n}", x.len())));
        }
        if !f.is_finite() || x.iter().any(|v| !v.is_finite()) {
            return Err(GlisError::NonFinite("observation"));
        }
        let tol = |j: usize| 1e-9 * (1.0 + self.scaling.half_width[j] + self.scaling.center[j].abs());
        let in_box = (0..n).all(|j| x[j] >= self.spec.lower()[j] - tol(j) && x[j] <= self.spec.upper()[j] + tol(j));
        if !in_box {
            return Err(GlisError::OutOfBounds);
        }
        let xs = self.scaling.to_scaled(x);
        if self.samples.contains(&xs) {
            return Err(GlisError::DuplicatePoint);
        }

        let surrogate = match &self.surrogate {
            Some(s) => Some(s.update(&xs, f)?),
            None => None,
        };
        self.samples.push(&xs, f)?;
        self.surrogate = surrogate;
        self.x.push(x.to_vec());
        self.violation.push(self.spec.max_violation(x));
        if let Some(k) = self.pending.iter().position(|p| p.as_slice() == x) {
            self.pending.remove(k);
        }

        let i = self.samples.len() - 1;
        if self.best.is_none_or(|b| self.ranks_before(i, b)) {
            self.best = Some(i);
        }
        self.history.push(self.samples.values()[self.best.unwrap_or(i)]);

        if self.samples.len() >= self.config.n_max {
            self.phase = Phase::Finished;
        } else if self.surrogate.is_none() && self.samples.len() >= self.config.n_init {
            self.surrogate = Some(self.fit()?);
            self.pending.clear();
            self.phase = Phase::Running;
        }
        if self.phase == Phase::Finished && self.surrogate.is_none() {
            self.surrogate = Some(self.fit()?);
        }
        Ok(())
    }

    /// Feasible samples outrank infeasible ones; ties go to the lower value.
    fn ranks_before(&self, i: usize, j: usize) -> bool {
        let tol = self.config.feasibility_tol;
        let (fi, fj) = (self.violation[i] <= tol, self.violation[j] <= tol);
        if fi != fj {
            return fi;
        }
        self.samples.values()[i] < self.samples.values()[j]
    }

    fn fit(&self) -> Result<Surrogate> {
        Ok(match self.choice {
            SurrogateChoice::Rbf(kind) => Surrogate::Rbf(RbfModel::fit(self.samples.clone(), kind, self.config.eps_svd)?),
            SurrogateChoice::Idw(kind) => Surrogate::Idw(IdwModel { kind, samples: self.samples.clone() }),
        })
    }

    /// Whether the current best sample satisfies the constraints.
    pub fn best_is_feasible(&self) -> bool {
        self.best.is_some_and(|i| self.violation[i] <= self.config.feasibility_tol)
    }
}

fn clamp_to_box(x: Vec<f64>, spec: &ProblemSpec) -> Vec<f64> {
    x.into_iter()
        .zip(spec.lower().iter().zip(spec.upper()))
        .map(|(v, (l, u))| v.clamp(*l, *u))
        .collect()
}

/// Starts a run and evaluates the whole initial design.
pub fn glis_init(spec: &ProblemSpec, config: &GlisConfig) -> Result<GlisState> {
    let mut state = GlisState::start(spec, config)?;
    while state.phase == Phase::Initializing {
        let x = state.suggest()?;
        let f = spec.evaluate(&x);
        state.observe(&x, f)?;
    }
    Ok(state)
}

/// Ask step of the ask/tell interface.
pub fn glis_suggest(state: &mut GlisState) -> Result<Vec<f64>> {
    state.suggest()
}

/// Tell step of the ask/tell interface.
pub fn glis_observe(state: &mut GlisState, x: &[f64], f: f64) -> Result<()> {
    state.observe(x, f)
}

#[derive(Debug, Clone)]
pub struct GlisResult {
    pub x_best: Vec<f64>,
    pub f_best: f64,
    /// Best-so-far value after each evaluation; length `N_max`.
    pub history: Vec<f64>,
    /// All evaluated points in order.
    pub x: Vec<Vec<f64>>,
    pub f: Vec<f64>,
    /// Whether `x_best` satisfies the constraints.
    pub feasible: bool,
}

/// Runs the full loop for `N_max` evaluations and returns the best sample.
pub fn glis_run(spec: &ProblemSpec, config: &GlisConfig) -> Result<GlisResult> {
    let mut state = glis_init(spec, config)?;
    while state.phase != Phase::Finished {
        let x = state.suggest()?;
        let f = spec.evaluate(&x);
        state.observe(&x, f)?;
    }
    let best = state.best.ok_or(GlisError::InvalidPhase(state.phase))?;
    Ok(GlisResult {
        x_best: state.x[best].clone(),
        f_best: state.samples.values()[best],
        feasible: state.best_is_feasible(),
        history: state.history,
        f: state.samples.values().to_vec(),
        x: state.x,
    })
}
