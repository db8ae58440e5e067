use glis::acquisition::Acquisition;
use glis::benchmarks::{f_1d, get_benchmark};
use glis::optimizer::{glis_init, glis_observe, glis_suggest};
use glis::{glis_run, GlisConfig, GlisError, IdwWeightKind, Phase, ProblemSpec, RbfKernel, RbfKind, SurrogateChoice};
use proptest::prelude::*;

fn one_d() -> ProblemSpec {
    ProblemSpec::new(vec![-3.0], vec![3.0], |x: &[f64]| f_1d(x[0])).unwrap()
}

fn quick(n: usize, seed: u64) -> GlisConfig {
    let mut cfg = GlisConfig::new(n);
    cfg.n_max = 4 * n + 6;
    cfg.pso.iterations = 60;
    cfg.seed = seed;
    cfg
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn run_invariants(seed in any::<u64>(), idx in 0usize..4, use_idw in any::<bool>()) {
        let name = ["branin", "hartman3", "adjiman", "himmelblau"][idx];
        let b = get_benchmark(name).unwrap();
        let n = b.spec.dim();
        let mut cfg = quick(n, seed);
        if use_idw {
            cfg.surrogate = SurrogateChoice::Idw(IdwWeightKind::InverseSquared);
        }
        let r = glis_run(&b.spec, &cfg).unwrap();
        prop_assert_eq!(r.history.len(), cfg.n_max);
        prop_assert!(r.history.windows(2).all(|w| w[1] <= w[0]));
        let f_min = r.f.iter().copied().fold(f64::INFINITY, f64::min);
        prop_assert_eq!(r.f_best, f_min);
        prop_assert_eq!(*r.history.last().unwrap(), f_min);
        for x in &r.x {
            prop_assert!(b.spec.in_box(x, 1e-12), "{:?}", x);
        }
        let again = glis_run(&b.spec, &cfg).unwrap();
        prop_assert_eq!(&again.history, &r.history);
        prop_assert_eq!(&again.x, &r.x);
    }

    #[test]
    fn pure_idw_exploitation_never_undercuts_samples(seed in any::<u64>()) {
        let mut cfg = quick(1, seed);
        cfg.acquisition.alpha = 0.0;
        cfg.acquisition.delta = 0.0;
        cfg.surrogate = SurrogateChoice::Idw(IdwWeightKind::InverseSquared);
        let mut state = glis_init(&one_d(), &cfg).unwrap();
        while state.phase() != Phase::Finished {
            let x = glis_suggest(&mut state).unwrap();
            let xs = state.scaling().to_scaled(&x);
            let fhat = state.surrogate().unwrap().predict(&xs);
            let f_min = state.values().iter().copied().fold(f64::INFINITY, f64::min);
            prop_assert!(fhat >= f_min);
            glis_observe(&mut state, &x, f_1d(x[0])).unwrap();
        }
    }
}

#[test]
fn suggestion_matches_grid_argmin_of_acquisition() {
    for seed in 0..4 {
        let mut cfg = GlisConfig::new(1);
        cfg.surrogate = SurrogateChoice::Rbf(RbfKind::new(RbfKernel::ThinPlateSpline, 0.01).unwrap());
        cfg.eps_svd = 1e-6;
        cfg.acquisition.alpha = 1.0;
        cfg.acquisition.delta = 0.5;
        cfg.n_init = 5;
        cfg.n_max = 6;
        cfg.seed = seed;
        let mut state = glis_init(&one_d(), &cfg).unwrap();
        let x = glis_suggest(&mut state).unwrap();
        let (params, _) = state.config().effective(1);
        let acq = Acquisition::new(state.surrogate().unwrap(), &params);
        let steps = 60_000;
        let (mut best_x, mut best_a) = (f64::NAN, f64::INFINITY);
        for k in 0..=steps {
            let xs = -1.0 + 2.0 * k as f64 / steps as f64;
            let a = acq.value(&[xs]);
            if a < best_a {
                best_a = a;
                best_x = state.scaling().to_original(&[xs])[0];
            }
        }
        assert!((x[0] - best_x).abs() <= 1e-2, "seed {seed}: suggested {} vs grid {best_x}", x[0]);
    }
}

#[test]
fn ask_tell_bookkeeping() {
    let mut cfg = quick(1, 3);
    cfg.n_init = 3;
    cfg.n_max = 5;
    let mut state = glis_init(&one_d(), &cfg).unwrap();
    assert_eq!(state.evaluations(), 3);
    let best = state.best_index().unwrap();
    let x = glis_suggest(&mut state).unwrap();
    glis_observe(&mut state, &x, -100.0).unwrap();
    assert_eq!(state.best_index(), Some(3));
    assert_eq!(state.f_best(), Some(-100.0));
    let x = glis_suggest(&mut state).unwrap();
    glis_observe(&mut state, &x, 1e6).unwrap();
    assert_eq!(state.best_index(), Some(3));
    assert_ne!(best, 3);
    assert_eq!(state.phase(), Phase::Finished);
    assert!(matches!(glis_suggest(&mut state), Err(GlisError::InvalidPhase(_))));
}

#[test]
fn observe_rejects_repeats_and_bad_values() {
    let cfg = quick(1, 1);
    let mut state = glis_init(&one_d(), &cfg).unwrap();
    let seen = state.points()[0].clone();
    assert!(matches!(glis_observe(&mut state, &seen, 1.0), Err(GlisError::DuplicatePoint)));
    assert!(glis_observe(&mut state, &[0.123], f64::NAN).is_err());
    assert!(glis_observe(&mut state, &[7.0], 1.0).is_err());
}
