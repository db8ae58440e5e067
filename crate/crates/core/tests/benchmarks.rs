use glis::benchmarks::{admm_qp_solve, get_benchmark, qp_reference_solve, AdmmBenchmark, AdmmConfig, QpProblem, BENCHMARK_NAMES};
use glis::numerics::DenseMatrix;
use nalgebra::DVector;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_qp(rng: &mut ChaCha8Rng, n: usize, q: usize, p: usize) -> QpProblem {
    let l = DenseMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
    let qm = &l * l.transpose() + DenseMatrix::identity(n, n) * 0.5;
    let c = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    let f = DenseMatrix::from_fn(n, p, |_, _| rng.random_range(-1.0..1.0));
    let a = DenseMatrix::from_fn(q, n, |_, _| rng.random_range(-1.0..1.0));
    // z = 0 is strictly feasible for every θ ∈ [-1,1]^p.
    let s = DenseMatrix::from_fn(q, p, |_, _| rng.random_range(-0.2..0.2));
    let b = (0..q).map(|_| rng.random_range(0.5..2.0)).collect();
    QpProblem::new(qm, c, f, a, b, s).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reference_solution_satisfies_kkt(seed in any::<u64>(), n in 1usize..5, q in 1usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let qp = random_qp(&mut rng, n, q, 2);
        let theta = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
        let (z, obj) = qp_reference_solve(&qp, &theta).unwrap();
        let rhs = qp.rhs(&theta);
        let lin = qp.linear_term(&theta);
        let zv = DVector::from_column_slice(&z);
        let slack: Vec<f64> = (0..q).map(|i| rhs[i] - (qp.a.row(i) * &zv)[0]).collect();
        prop_assert!(slack.iter().all(|&s| s >= -1e-9));
        let active: Vec<usize> = (0..q).filter(|&i| slack[i].abs() <= 1e-9).collect();
        // Multipliers from the active rows by least squares: A_Wᵀλ = −(Qz + c + Fθ).
        let grad = &qp.q * &zv + DVector::from_column_slice(&lin);
        let lambda = if active.is_empty() {
            DVector::zeros(0)
        } else {
            let at = DenseMatrix::from_fn(n, active.len(), |j, t| qp.a[(active[t], j)]);
            at.svd(true, true).solve(&(-&grad), 1e-12).unwrap()
        };
        prop_assert!(lambda.iter().all(|&l| l >= -1e-8), "{lambda}");
        let mut station = grad.clone();
        for (t, &i) in active.iter().enumerate() {
            for j in 0..n {
                station[j] += lambda[t] * qp.a[(i, j)];
            }
        }
        prop_assert!(station.norm() <= 1e-8, "stationarity {}", station.norm());
        let comp: f64 = active.iter().zip(lambda.iter()).map(|(&i, l)| (l * slack[i]).abs()).sum();
        prop_assert!(comp <= 1e-8);
        prop_assert!((obj - qp.objective(&z, &theta)).abs() <= 1e-12 * (1.0 + obj.abs()));
    }
}

#[test]
fn long_admm_run_reaches_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..5 {
        let qp = random_qp(&mut rng, 3, 4, 2);
        let theta = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
        let (_, reference) = qp_reference_solve(&qp, &theta).unwrap();
        let cfg = AdmmConfig { rho_bar: 1.0, alpha_bar: 1.6, iterations: 20_000 };
        let (_, obj) = admm_qp_solve(&qp, &theta, &cfg).unwrap();
        assert!((obj - reference).abs() <= 1e-5 * (1.0 + reference.abs()), "{obj} vs {reference}");
    }
}

#[test]
fn performance_is_deterministic_per_seed() {
    let make = |seed| AdmmBenchmark::new(QpProblem::tuning_instance(), 50, 100, seed).unwrap();
    let x = [0.5, 1.5];
    let (a, b, c) = (make(4), make(4), make(5));
    assert_eq!(a.performance(&x).unwrap().to_bits(), b.performance(&x).unwrap().to_bits());
    assert_ne!(a.performance(&x).unwrap(), c.performance(&x).unwrap());
}

#[test]
fn registry_optimizers_are_in_bounds() {
    for name in BENCHMARK_NAMES {
        let b = get_benchmark(name).unwrap();
        for x in &b.known_optimizers {
            assert!(b.spec.in_box(x, 0.0), "{name}: {x:?}");
            if let Some(f) = b.known_optimum {
                assert!((b.spec.evaluate(x) - f).abs() <= 1e-6, "{name}");
            }
        }
        assert!(b.default_n_init <= b.default_n_max);
    }
}
