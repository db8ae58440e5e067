use glis::numerics::{solve_lp, svd_truncated_solve, DenseMatrix, LpProblem, Sense};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Cyclic Jacobi rotations; returns eigenvalues and eigenvectors (columns).
fn jacobi_eigen(m: &DenseMatrix) -> (Vec<f64>, DenseMatrix) {
    let n = m.nrows();
    let mut a = m.clone();
    let mut v = DenseMatrix::identity(n, n);
    for _ in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[(i, j)].powi(2)).sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[(p, q)].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * a[(p, q)]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    ((0..n).map(|i| a[(i, i)]).collect(), v)
}

fn jacobi_truncated_solve(m: &DenseMatrix, rhs: &[f64], eps: f64) -> Vec<f64> {
    let (lam, v) = jacobi_eigen(m);
    let n = rhs.len();
    let mut x = vec![0.0; n];
    for (k, l) in lam.iter().enumerate() {
        if l.abs() < eps {
            continue;
        }
        let coef = (0..n).map(|i| v[(i, k)] * rhs[i]).sum::<f64>() / l;
        for i in 0..n {
            x[i] += coef * v[(i, k)];
        }
    }
    x
}

/// Symmetric matrix with prescribed spectrum and a random orthogonal basis.
fn with_spectrum(rng: &mut ChaCha8Rng, spectrum: &[f64]) -> DenseMatrix {
    let n = spectrum.len();
    let g = DenseMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
    let q = g.qr().q();
    &q * DenseMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(spectrum)) * q.transpose()
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn truncated_solve_matches_jacobi_oracle(seed in any::<u64>(), n in 2usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // Eigenvalues kept well away from the threshold so both solvers keep the same set.
        let spectrum: Vec<f64> = (0..n)
            .map(|i| if i % 3 == 0 { rng.random_range(1e-9..1e-7) } else { rng.random_range(0.5..4.0) * if rng.random::<bool>() { 1.0 } else { -1.0 } })
            .collect();
        let m = with_spectrum(&mut rng, &spectrum);
        let rhs: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let ours = svd_truncated_solve(&m, &rhs, 1e-4).unwrap();
        let oracle = jacobi_truncated_solve(&m, &rhs, 1e-4);
        for (a, b) in ours.iter().zip(&oracle) {
            prop_assert!((a - b).abs() <= 1e-10 * (1.0 + norm(&oracle)), "{a} vs {b}");
        }
    }

    #[test]
    fn small_threshold_reproduces_exact_solve(seed in any::<u64>(), n in 1usize..=50) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spectrum: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..10.0)).collect();
        let m = with_spectrum(&mut rng, &spectrum);
        let rhs: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let x = svd_truncated_solve(&m, &rhs, 1e-12).unwrap();
        let r = &m * nalgebra::DVector::from_column_slice(&x) - nalgebra::DVector::from_column_slice(&rhs);
        prop_assert!(r.norm() <= 1e-8 * norm(&rhs));
    }

    #[test]
    fn truncated_solve_is_permutation_invariant(seed in any::<u64>(), n in 2usize..20) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spectrum: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..10.0)).collect();
        let m = with_spectrum(&mut rng, &spectrum);
        let rhs: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.random_range(0..=i));
        }
        let mp = DenseMatrix::from_fn(n, n, |i, j| m[(perm[i], perm[j])]);
        let rp: Vec<f64> = perm.iter().map(|&i| rhs[i]).collect();
        let x = svd_truncated_solve(&m, &rhs, 1e-6).unwrap();
        let xp = svd_truncated_solve(&mp, &rp, 1e-6).unwrap();
        for (i, &pi) in perm.iter().enumerate() {
            prop_assert!((xp[i] - x[pi]).abs() <= 1e-10 * (1.0 + norm(&x)));
        }
    }
}

/// Best objective over all vertices of `{A x ≤ b, ℓ ≤ x ≤ u}`.
fn vertex_enumeration(cost: &[f64], a: &DenseMatrix, b: &[f64], lower: &[f64], upper: &[f64]) -> Option<f64> {
    let n = cost.len();
    let mut rows: Vec<(Vec<f64>, f64)> = (0..a.nrows()).map(|i| (a.row(i).iter().copied().collect(), b[i])).collect();
    for j in 0..n {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        rows.push((e.clone(), upper[j]));
        e[j] = -1.0;
        rows.push((e, -lower[j]));
    }
    let mut best: Option<f64> = None;
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        let m = DenseMatrix::from_fn(n, n, |i, j| rows[idx[i]].0[j]);
        let r = nalgebra::DVector::from_iterator(n, idx.iter().map(|&i| rows[i].1));
        if let Some(x) = m.lu().solve(&r) {
            let ok = x.iter().all(|v| v.is_finite())
                && rows.iter().all(|(row, bi)| row.iter().zip(x.iter()).map(|(p, q)| p * q).sum::<f64>() <= bi + 1e-9);
            if ok {
                let v: f64 = cost.iter().zip(x.iter()).map(|(c, xi)| c * xi).sum();
                best = Some(best.map_or(v, |b: f64| b.min(v)));
            }
        }
        // Next n-subset in lexicographic order.
        let total = rows.len();
        let mut k = n;
        while k > 0 && idx[k - 1] == total - n + k - 1 {
            k -= 1;
        }
        if k == 0 {
            return best;
        }
        idx[k - 1] += 1;
        for t in k..n {
            idx[t] = idx[t - 1] + 1;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn lp_matches_vertex_enumeration(seed in any::<u64>(), n in 1usize..=6, q in 0usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x0: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let a = DenseMatrix::from_fn(q, n, |_, _| rng.random_range(-2.0..2.0));
        // Feasible by construction: x0 satisfies every row with positive slack.
        let b: Vec<f64> = (0..q).map(|i| a.row(i).iter().zip(&x0).map(|(p, x)| p * x).sum::<f64>() + rng.random_range(0.1..2.0)).collect();
        let cost: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let (lower, upper) = (vec![-5.0; n], vec![5.0; n]);
        let sol = solve_lp(&LpProblem::new(cost.clone(), Sense::Minimize).with_rows(a.clone(), b.clone()).with_bounds(lower.clone(), upper.clone())).unwrap();
        let oracle = vertex_enumeration(&cost, &a, &b, &lower, &upper).unwrap();
        prop_assert!((sol.value - oracle).abs() <= 1e-8 * (1.0 + oracle.abs()), "{} vs {}", sol.value, oracle);
        let cx: f64 = cost.iter().zip(&sol.x).map(|(c, x)| c * x).sum();
        prop_assert!((cx - sol.value).abs() <= 1e-9 * (1.0 + cx.abs()));
    }
}
