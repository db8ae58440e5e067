use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{GlisError, Result};

/// Row/column matrix of `f64`; all matrices in the crate use this type.
pub type DenseMatrix = DMatrix<f64>;

fn check_finite(m: &DenseMatrix, what: &'static str) -> Result<()> {
    if m.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(GlisError::NonFinite(what))
    }
}

/// Solves `m β = rhs` for symmetric `m`, discarding the spectral components
/// whose singular value falls below `eps_svd`.
///
/// For a symmetric matrix the SVD follows from the eigendecomposition
/// `m = T Λ T'` with `σᵢ = |λᵢ|`, so `β = Σ_{σᵢ ≥ eps_svd} tᵢ (tᵢ'rhs) / λᵢ`.
/// When every singular value is truncated the zero vector is returned.
pub fn svd_truncated_solve(m: &DenseMatrix, rhs: &[f64], eps_svd: f64) -> Result<Vec<f64>> {
    let n = m.nrows();
    if m.ncols() != n || rhs.len() != n {
        return Err(GlisError::DimensionMismatch(format!(
            "matrix {}x{}, rhs {}",
            m.nrows(),
            m.ncols(),
            rhs.len()
        )));
    }
    if !(eps_svd > 0.0) {
        return Err(GlisError::InvalidConfig(format!("eps_svd must be positive, got {eps_svd}")));
    }
    check_finite(m, "matrix")?;
    if rhs.iter().any(|v| !v.is_finite()) {
        return Err(GlisError::NonFinite("right-hand side"));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let scale = m.amax().max(1.0);
    for i in 0..n {
        for j in (i + 1)..n {
            if (m[(i, j)] - m[(j, i)]).abs() > 1e-10 * scale {
                return Err(GlisError::NotSymmetric);
            }
        }
    }

    let eig = SymmetricEigen::try_new(m.clone(), f64::EPSILON, 100_000).ok_or(GlisError::NoConvergence)?;
    let mut beta = vec![0.0; n];
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda.abs() < eps_svd {
            continue;
        }
        let t = eig.eigenvectors.column(k);
        let proj: f64 = t.iter().zip(rhs).map(|(a, b)| a * b).sum::<f64>() / lambda;
        for (b, ti) in beta.iter_mut().zip(t.iter()) {
            *b += proj * ti;
        }
    }
    Ok(beta)
}

/// Cholesky solve of `m X = rhs` for symmetric positive definite `m`.
pub fn spd_solve(m: &DenseMatrix, rhs: &DenseMatrix) -> Result<DenseMatrix> {
    let n = m.nrows();
    if m.ncols() != n || rhs.nrows() != n {
        return Err(GlisError::DimensionMismatch(format!(
            "matrix {}x{}, rhs {}x{}",
            m.nrows(),
            m.ncols(),
            rhs.nrows(),
            rhs.ncols()
        )));
    }
    check_finite(m, "matrix")?;
    check_finite(rhs, "right-hand side")?;

    // lower factor, m = L L'
    let mut l = DenseMatrix::zeros(n, n);
    for j in 0..n {
        let mut d = m[(j, j)];
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        if !(d > 0.0) {
            return Err(GlisError::NotPositiveDefinite { row: j, pivot: d });
        }
        let d = d.sqrt();
        l[(j, j)] = d;
        for i in (j + 1)..n {
            let mut s = m[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / d;
        }
    }

    let mut x = rhs.clone();
    for c in 0..x.ncols() {
        for i in 0..n {
            let mut s = x[(i, c)];
            for k in 0..i {
                s -= l[(i, k)] * x[(k, c)];
            }
            x[(i, c)] = s / l[(i, i)];
        }
        for i in (0..n).rev() {
            let mut s = x[(i, c)];
            for k in (i + 1)..n {
                s -= l[(k, i)] * x[(k, c)];
            }
            x[(i, c)] = s / l[(i, i)];
        }
    }
    Ok(x)
}

/// Gaussian elimination with partial pivoting. Returns `None` when a pivot
/// falls below `1e-12` relative to the largest entry.
pub fn lu_solve(m: &DenseMatrix, rhs: &[f64]) -> Option<Vec<f64>> {
    let n = m.nrows();
    assert_eq!(m.ncols(), n);
    assert_eq!(rhs.len(), n);
    let mut a = m.clone();
    let mut b = rhs.to_vec();
    let tol = 1e-12 * a.amax().max(f64::MIN_POSITIVE);
    for col in 0..n {
        let (piv, pval) = (col..n)
            .map(|r| (r, a[(r, col)].abs()))
            .fold((col, -1.0), |acc, v| if v.1 > acc.1 { v } else { acc });
        if pval <= tol {
            return None;
        }
        if piv != col {
            a.swap_rows(piv, col);
            b.swap(piv, col);
        }
        for r in (col + 1)..n {
            let f = a[(r, col)] / a[(col, col)];
            if f == 0.0 {
                continue;
            }
            for c in col..n {
                a[(r, c)] -= f * a[(col, c)];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = b[i];
        for k in (i + 1)..n {
            s -= a[(i, k)] * x[k];
        }
        x[i] = s / a[(i, i)];
    }
    Some(x)
}
