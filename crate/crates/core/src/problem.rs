//! Problem definition, bound tightening and the affine map onto `[-1, 1]^n`.

use std::fmt;
use std::sync::Arc;

use crate::error::{GlisError, Result};
use crate::numerics::{solve_lp, DenseMatrix, LpProblem, Sense};

/// Black-box objective `x ↦ f(x)`.
pub type Objective = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;
/// Cheap constraint function `x ↦ g(x)`; `x` is feasible when every entry is `≤ 0`.
pub type ConstraintFn = Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;

/// Linear inequalities `A x ≤ b`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearConstraints {
    pub a: DenseMatrix,
    pub b: Vec<f64>,
}

impl LinearConstraints {
    pub fn new(a: DenseMatrix, b: Vec<f64>) -> Result<Self> {
        if a.nrows() != b.len() {
            return Err(GlisError::DimensionMismatch(format!("A has {} rows, b has {}", a.nrows(), b.len())));
        }
        if a.iter().chain(b.iter()).any(|v| !v.is_finite()) {
            return Err(GlisError::NonFinite("linear constraints"));
        }
        Ok(Self { a, b })
    }

    pub fn rows(&self) -> usize {
        self.b.len()
    }

    /// Row residuals `A_i x − b_i`.
    pub fn residuals<'a>(&'a self, x: &'a [f64]) -> impl Iterator<Item = f64> + 'a {
        (0..self.rows()).map(move |i| self.a.row(i).iter().zip(x).map(|(a, v)| a * v).sum::<f64>() - self.b[i])
    }
}

/// A bounded global optimization problem `min f(x)` s.t. `ℓ ≤ x ≤ u`,
/// `A x ≤ b`, `g(x) ≤ 0`.
#[derive(Clone)]
pub struct ProblemSpec {
    lower: Vec<f64>,
    upper: Vec<f64>,
    linear: Option<LinearConstraints>,
    constraint_fn: Option<ConstraintFn>,
    objective: Objective,
    eval_outside_feasible: bool,
}

impl fmt::Debug for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemSpec")
            .field("lower", &self.lower)
            .field("upper", &self.upper)
            .field("linear", &self.linear)
            .field("constraint_fn", &self.constraint_fn.is_some())
            .field("eval_outside_feasible", &self.eval_outside_feasible)
            .finish()
    }
}

impl ProblemSpec {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>, objective: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Result<Self> {
        if lower.len() != upper.len() || lower.is_empty() {
            return Err(GlisError::DimensionMismatch(format!("lower {}, upper {}", lower.len(), upper.len())));
        }
        if lower.iter().chain(&upper).any(|v| !v.is_finite()) {
            return Err(GlisError::NonFinite("bounds"));
        }
        if let Some(j) = (0..lower.len()).find(|&j| !(lower[j] < upper[j])) {
            return Err(GlisError::DegenerateBox(j));
        }
        Ok(Self {
            lower,
            upper,
            linear: None,
            constraint_fn: None,
            objective: Arc::new(objective),
            eval_outside_feasible: true,
        })
    }

    pub fn with_linear_constraints(mut self, a: DenseMatrix, b: Vec<f64>) -> Result<Self> {
        if a.ncols() != self.dim() {
            return Err(GlisError::DimensionMismatch(format!("A has {} columns, n = {}", a.ncols(), self.dim())));
        }
        self.linear = Some(LinearConstraints::new(a, b)?);
        Ok(self)
    }

    pub fn with_constraint_fn(mut self, g: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static) -> Self {
        self.constraint_fn = Some(Arc::new(g));
        self
    }

    /// Whether `f` may be evaluated at infeasible points. When `false`, the
    /// initial design is filtered so that only feasible points are evaluated.
    pub fn with_eval_outside_feasible(mut self, flag: bool) -> Self {
        self.eval_outside_feasible = flag;
        self
    }

    pub(crate) fn with_bounds(&self, lower: Vec<f64>, upper: Vec<f64>) -> Self {
        Self { lower, upper, ..self.clone() }
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn linear(&self) -> Option<&LinearConstraints> {
        self.linear.as_ref()
    }

    pub fn constraint_fn(&self) -> Option<&ConstraintFn> {
        self.constraint_fn.as_ref()
    }

    pub fn eval_outside_feasible(&self) -> bool {
        self.eval_outside_feasible
    }

    pub fn has_constraints(&self) -> bool {
        self.linear.is_some() || self.constraint_fn.is_some()
    }

    pub fn evaluate(&self, x: &[f64]) -> f64 {
        (self.objective)(x)
    }

    pub fn objective(&self) -> &Objective {
        &self.objective
    }

    /// `Σ max{gᵢ(x), 0}²` over linear rows and `g`; box bounds excluded.
    pub fn penalty(&self, x: &[f64]) -> f64 {
        let mut p = 0.0;
        if let Some(lin) = &self.linear {
            p += lin.residuals(x).map(|r| r.max(0.0).powi(2)).sum::<f64>();
        }
        if let Some(g) = &self.constraint_fn {
            p += g(x).into_iter().map(|v| v.max(0.0).powi(2)).sum::<f64>();
        }
        p
    }

    /// Largest violation of the linear rows and `g` (zero when feasible).
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let mut v: f64 = 0.0;
        if let Some(lin) = &self.linear {
            v = lin.residuals(x).fold(v, f64::max);
        }
        if let Some(g) = &self.constraint_fn {
            v = g(x).into_iter().fold(v, f64::max);
        }
        v.max(0.0)
    }

    /// `x ∈ 𝒳` up to `tol`; box bounds are not checked.
    pub fn is_feasible(&self, x: &[f64], tol: f64) -> bool {
        self.max_violation(x) <= tol
    }

    pub fn in_box(&self, x: &[f64], tol: f64) -> bool {
        x.len() == self.dim() && x.iter().zip(self.lower.iter().zip(&self.upper)).all(|(v, (l, u))| *v >= l - tol && *v <= u + tol)
    }
}

/// Tightens `(ℓ, u)` to the bounding box of `{x : A x ≤ b} ∩ [ℓ, u]` by
/// solving `2n` linear programs. Nonlinear constraints are ignored.
pub fn tighten_bounds(spec: &ProblemSpec) -> Result<(Vec<f64>, Vec<f64>)> {
    let (mut lower, mut upper) = (spec.lower.clone(), spec.upper.clone());
    let Some(lin) = &spec.linear else {
        return Ok((lower, upper));
    };
    let n = spec.dim();
    for i in 0..n {
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        for sense in [Sense::Minimize, Sense::Maximize] {
            let lp = LpProblem::new(e.clone(), sense)
                .with_rows(lin.a.clone(), lin.b.clone())
                .with_bounds(spec.lower.clone(), spec.upper.clone());
            let sol = solve_lp(&lp).map_err(|e| match e {
                GlisError::Infeasible => GlisError::InfeasibleConstraints,
                other => other,
            })?;
            match sense {
                Sense::Minimize => lower[i] = lower[i].max(sol.value),
                Sense::Maximize => upper[i] = upper[i].min(sol.value),
            }
        }
        if lower[i] > upper[i] {
            return Err(GlisError::InfeasibleConstraints);
        }
    }
    Ok((lower, upper))
}

/// Affine map `x(x̄) = x̄ ∘ h + c` with `c = (u+ℓ)/2`, `h = (u−ℓ)/2`, so that
/// `x̄ ∈ [-1, 1]^n` covers `[ℓ, u]` exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingMap {
    pub center: Vec<f64>,
    pub half_width: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    /// `Ā = A diag(h)`, `b̄ = b − A c`, so that `Ā x̄ ≤ b̄ ⇔ A x(x̄) ≤ b`.
    pub scaled_linear: Option<LinearConstraints>,
}

pub fn build_scaling(lower: &[f64], upper: &[f64], linear: Option<&LinearConstraints>) -> Result<ScalingMap> {
    if lower.len() != upper.len() {
        return Err(GlisError::DimensionMismatch(format!("lower {}, upper {}", lower.len(), upper.len())));
    }
    if let Some(j) = (0..lower.len()).find(|&j| !(lower[j] < upper[j])) {
        return Err(GlisError::DegenerateBox(j));
    }
    let center: Vec<f64> = lower.iter().zip(upper).map(|(l, u)| (u + l) / 2.0).collect();
    let half_width: Vec<f64> = lower.iter().zip(upper).map(|(l, u)| (u - l) / 2.0).collect();
    let scaled_linear = match linear {
        None => None,
        Some(lin) => {
            if lin.a.ncols() != lower.len() {
                return Err(GlisError::DimensionMismatch("linear constraints vs bounds".into()));
            }
            let mut a = lin.a.clone();
            for (j, h) in half_width.iter().enumerate() {
                a.column_mut(j).scale_mut(*h);
            }
            let b = (0..lin.rows())
                .map(|i| lin.b[i] - lin.a.row(i).iter().zip(&center).map(|(a, c)| a * c).sum::<f64>())
                .collect();
            Some(LinearConstraints { a, b })
        }
    };
    Ok(ScalingMap { center, half_width, lower: lower.to_vec(), upper: upper.to_vec(), scaled_linear })
}

impl ScalingMap {
    pub fn dim(&self) -> usize {
        self.center.len()
    }

    /// Measured from the nearer end of the box, so `±1` lands on `u`/`ℓ` bit for bit.
    pub fn to_original(&self, xs: &[f64]) -> Vec<f64> {
        xs.iter()
            .enumerate()
            .map(|(j, &x)| {
                let h = self.half_width[j];
                if x >= 0.0 {
                    self.upper[j] - (1.0 - x) * h
                } else {
                    self.lower[j] + (1.0 + x) * h
                }
            })
            .collect()
    }

    pub fn to_scaled(&self, x: &[f64]) -> Vec<f64> {
        x.iter().zip(self.half_width.iter().zip(&self.center)).map(|(x, (h, c))| (x - c) / h).collect()
    }
}
