use super::DenseMatrix;
use crate::error::{GlisError, Result};

const PIVOT_TOL: f64 = 1e-11;
const COST_TOL: f64 = 1e-10;
const MAX_PIVOTS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

/// `opt cost'x  s.t.  a x ≤ b,  lower ≤ x ≤ upper`; bounds may be infinite.
#[derive(Debug, Clone)]
pub struct LpProblem {
    pub cost: Vec<f64>,
    pub a: DenseMatrix,
    pub b: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub sense: Sense,
}

impl LpProblem {
    /// Problem with no inequality rows and free variables.
    pub fn new(cost: Vec<f64>, sense: Sense) -> Self {
        let n = cost.len();
        Self {
            cost,
            a: DenseMatrix::zeros(0, n),
            b: Vec::new(),
            lower: vec![f64::NEG_INFINITY; n],
            upper: vec![f64::INFINITY; n],
            sense,
        }
    }

    pub fn with_rows(mut self, a: DenseMatrix, b: Vec<f64>) -> Self {
        self.a = a;
        self.b = b;
        self
    }

    pub fn with_bounds(mut self, lower: Vec<f64>, upper: Vec<f64>) -> Self {
        self.lower = lower;
        self.upper = upper;
        self
    }

    fn validate(&self) -> Result<()> {
        let n = self.cost.len();
        if self.a.ncols() != n || self.a.nrows() != self.b.len() || self.lower.len() != n || self.upper.len() != n {
            return Err(GlisError::DimensionMismatch(format!(
                "cost {}, rows {}x{}, rhs {}, bounds {}/{}",
                n,
                self.a.nrows(),
                self.a.ncols(),
                self.b.len(),
                self.lower.len(),
                self.upper.len()
            )));
        }
        if self.cost.iter().chain(self.b.iter()).chain(self.a.iter()).any(|v| !v.is_finite()) {
            return Err(GlisError::NonFinite("linear program data"));
        }
        if self.lower.iter().any(|v| v.is_nan() || *v == f64::INFINITY)
            || self.upper.iter().any(|v| v.is_nan() || *v == f64::NEG_INFINITY)
        {
            return Err(GlisError::NonFinite("variable bounds"));
        }
        if self.lower.iter().zip(&self.upper).any(|(l, u)| l > u) {
            return Err(GlisError::Infeasible);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub value: f64,
}

/// How an original variable is expressed through nonnegative simplex columns.
#[derive(Debug, Clone, Copy)]
enum VarMap {
    /// x = l + y
    Shift { col: usize, lower: f64 },
    /// x = u - y
    Flip { col: usize, upper: f64 },
    /// x = y⁺ - y⁻
    Split { pos: usize, neg: usize },
}

struct Tableau {
    rows: Vec<Vec<f64>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> f64 {
        self.rows[i][self.ncols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v /= p;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f != 0.0 {
                for (v, pv) in row.iter_mut().zip(&prow) {
                    *v -= f * pv;
                }
                row[c] = 0.0;
            }
        }
        self.basis[r] = c;
    }

    /// Primal simplex with Bland's rule over columns `< allowed`.
    fn optimize(&mut self, cost: &[f64], allowed: usize) -> Result<()> {
        for _ in 0..MAX_PIVOTS {
            let mut entering = None;
            for j in 0..allowed {
                if self.basis.contains(&j) {
                    continue;
                }
                let reduced = cost[j]
                    - self
                        .rows
                        .iter()
                        .zip(&self.basis)
                        .map(|(row, &bi)| cost[bi] * row[j])
                        .sum::<f64>();
                if reduced < -COST_TOL {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else {
                return Ok(());
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.rows.len() {
                let a = self.rows[i][c];
                if a > PIVOT_TOL {
                    let ratio = self.rhs(i) / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((li, lr)) => {
                            let tie = (ratio - lr).abs() <= 1e-12 * (1.0 + lr.abs());
                            if (!tie && ratio < lr) || (tie && self.basis[i] < self.basis[li]) {
                                Some((i, ratio))
                            } else {
                                Some((li, lr))
                            }
                        }
                    };
                }
            }
            let Some((r, _)) = leave else {
                return Err(GlisError::Unbounded);
            };
            self.pivot(r, c);
        }
        Err(GlisError::NoConvergence)
    }
}

/// Dense two-phase simplex with Bland's anti-cycling rule.
///
/// Returns a vertex solution; `value = cost'x` in the original sense.
pub fn solve_lp(p: &LpProblem) -> Result<LpSolution> {
    p.validate()?;
    let n = p.cost.len();

    let mut maps = Vec::with_capacity(n);
    let mut ny = 0;
    for j in 0..n {
        let (l, u) = (p.lower[j], p.upper[j]);
        let m = if l.is_finite() {
            ny += 1;
            VarMap::Shift { col: ny - 1, lower: l }
        } else if u.is_finite() {
            ny += 1;
            VarMap::Flip { col: ny - 1, upper: u }
        } else {
            ny += 2;
            VarMap::Split { pos: ny - 2, neg: ny - 1 }
        };
        maps.push(m);
    }

    // inequality rows over y ≥ 0
    let mut rows: Vec<(Vec<f64>, f64)> = Vec::new();
    for i in 0..p.a.nrows() {
        let mut coeffs = vec![0.0; ny];
        let mut rhs = p.b[i];
        for (j, m) in maps.iter().enumerate() {
            let a = p.a[(i, j)];
            match *m {
                VarMap::Shift { col, lower } => {
                    coeffs[col] += a;
                    rhs -= a * lower;
                }
                VarMap::Flip { col, upper } => {
                    coeffs[col] -= a;
                    rhs -= a * upper;
                }
                VarMap::Split { pos, neg } => {
                    coeffs[pos] += a;
                    coeffs[neg] -= a;
                }
            }
        }
        rows.push((coeffs, rhs));
    }
    for (j, m) in maps.iter().enumerate() {
        if let VarMap::Shift { col, lower } = *m {
            if p.upper[j].is_finite() {
                let mut coeffs = vec![0.0; ny];
                coeffs[col] = 1.0;
                rows.push((coeffs, p.upper[j] - lower));
            }
        }
    }

    let sign = match p.sense {
        Sense::Minimize => 1.0,
        Sense::Maximize => -1.0,
    };
    let mut ycost = vec![0.0; ny];
    for (j, m) in maps.iter().enumerate() {
        let c = sign * p.cost[j];
        match *m {
            VarMap::Shift { col, .. } => ycost[col] += c,
            VarMap::Flip { col, .. } => ycost[col] -= c,
            VarMap::Split { pos, neg } => {
                ycost[pos] += c;
                ycost[neg] -= c;
            }
        }
    }

    let m = rows.len();
    let n_art = rows.iter().filter(|(_, r)| *r < 0.0).count();
    let ncols = ny + m + n_art;
    let art0 = ny + m;
    let mut tab = Tableau { rows: Vec::with_capacity(m), basis: Vec::with_capacity(m), ncols };
    let mut next_art = art0;
    for (i, (coeffs, rhs)) in rows.into_iter().enumerate() {
        let mut row = vec![0.0; ncols + 1];
        row[..ny].copy_from_slice(&coeffs);
        row[ny + i] = 1.0;
        row[ncols] = rhs;
        if rhs < 0.0 {
            for v in row.iter_mut() {
                *v = -*v;
            }
            row[next_art] = 1.0;
            tab.basis.push(next_art);
            next_art += 1;
        } else {
            tab.basis.push(ny + i);
        }
        tab.rows.push(row);
    }

    if n_art > 0 {
        let mut c1 = vec![0.0; ncols];
        for c in c1.iter_mut().skip(art0) {
            *c = 1.0;
        }
        tab.optimize(&c1, ncols)?;
        let infeas: f64 = (0..m).filter(|&i| tab.basis[i] >= art0).map(|i| tab.rhs(i)).sum();
        let scale = 1.0 + p.b.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        if infeas > 1e-9 * scale {
            return Err(GlisError::Infeasible);
        }
        for i in 0..m {
            if tab.basis[i] >= art0 {
                if let Some(c) = (0..art0).find(|&c| tab.rows[i][c].abs() > 1e-9) {
                    tab.pivot(i, c);
                }
            }
        }
    }

    let mut c2 = vec![0.0; ncols];
    c2[..ny].copy_from_slice(&ycost);
    tab.optimize(&c2, art0)?;

    let mut y = vec![0.0; ncols];
    for (i, &bi) in tab.basis.iter().enumerate() {
        y[bi] = tab.rhs(i).max(0.0);
    }
    let x: Vec<f64> = maps
        .iter()
        .map(|m| match *m {
            VarMap::Shift { col, lower } => lower + y[col],
            VarMap::Flip { col, upper } => upper - y[col],
            VarMap::Split { pos, neg } => y[pos] - y[neg],
        })
        .collect();
    let value = p.cost.iter().zip(&x).map(|(c, v)| c * v).sum();
    Ok(LpSolution { x, value })
}
