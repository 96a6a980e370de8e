mod common;

use common::random_state;
use jcmodes_core::oracle::{integrate, max_deviation, rhs, TruncatedLadder};
use jcmodes_core::{Error, InitialState, ModelParams, StateSlice};
use proptest::prelude::*;

#[test]
fn vacuum_is_stationary() {
    let p = ModelParams::new(5.0).unwrap();
    let mut y = TruncatedLadder::zeros(10);
    y.d[0] = 1.0;
    let dy = rhs(&y, &p);
    for v in [&dy.d, &dy.e, &dy.f, &dy.h] {
        assert!(v.iter().all(|&x| x == 0.0));
    }
}

#[test]
fn excited_vacuum_derivatives() {
    let p = ModelParams::new(1.0).unwrap();
    let mut y = TruncatedLadder::zeros(10);
    y.e[0] = 1.0;
    let dy = rhs(&y, &p);
    assert_eq!(dy.d[0], -2.0);
    assert_eq!(dy.h[0], 4.0);
    assert_eq!(dy.e[0], 0.0);
}

#[test]
fn tight_truncation_is_refused() {
    let p = ModelParams::new(5.0).unwrap();
    let state = InitialState::fock_ground(6);
    assert!(matches!(
        integrate(&state, &p, &[0.0, 1.0], 8, 1e-3),
        Err(Error::TruncationTooTight { .. })
    ));
    assert!(matches!(
        integrate(&state, &p, &[0.0, 1.0], 26, 0.0),
        Err(Error::InvalidParameter(_))
    ));
}

#[test]
fn deviation_examples() {
    let p = ModelParams::new(5.0).unwrap();
    let state = InitialState::fock_ground(2);
    let run = integrate(&state, &p, &[0.0, 0.1], 22, 1e-3).unwrap();
    assert_eq!(max_deviation(&run, &run).unwrap(), 0.0);
    let mut other: Vec<StateSlice> = run.clone();
    other[1].h[3] += 1e-7;
    let dev = max_deviation(&run, &other).unwrap();
    assert!((dev - 1e-7).abs() < 1e-15);
    assert!(matches!(
        max_deviation(&run, &run[..1]),
        Err(Error::GridMismatch)
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn trace_and_positivity(seed in any::<u64>(), n_support in 0usize..=8) {
        let p = ModelParams::new(5.0).unwrap();
        let state = random_state(seed, n_support);
        let taus: Vec<f64> = (0..=10).map(|i| 0.1 * i as f64).collect();
        let run = integrate(&state, &p, &taus, n_support + 20, 1e-3).unwrap();
        for s in &run {
            prop_assert!((s.d.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
            prop_assert!(s.e.iter().chain(&s.g).all(|&x| x >= -1e-10));
        }
    }

    #[test]
    fn truncation_insensitive(seed in any::<u64>(), n_support in 0usize..=6) {
        let p = ModelParams::new(5.0).unwrap();
        let state = random_state(seed, n_support);
        let taus = [0.0, 0.5, 1.0];
        let short = integrate(&state, &p, &taus, n_support + 20, 1e-3).unwrap();
        let long: Vec<_> = integrate(&state, &p, &taus, n_support + 40, 1e-3)
            .unwrap()
            .into_iter()
            .map(|s| s.truncated(n_support + 20))
            .collect();
        prop_assert!(max_deviation(&short, &long).unwrap() <= 1e-10);
    }
}
