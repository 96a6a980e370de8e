mod common;

use common::{grid, random_state};
use jcmodes_core::evolve::{generating_at, moments_at, state_at};
use jcmodes_core::oracle::{integrate, max_deviation};
use jcmodes_core::projection::project;
use jcmodes_core::{InitialState, ModelParams};
use proptest::prelude::*;

fn falling_factorial(n: usize, m: usize) -> f64 {
    (0..m).map(|j| (n - j) as f64).product()
}

#[test]
fn moments_match_photon_number_sums() {
    let p = ModelParams::new(5.0).unwrap();
    let state = random_state(11, 7);
    let dec = project(&p, &state).unwrap();
    for tau in [0.0, 0.4, 1.3] {
        let slice = state_at(&dec, tau, 8).unwrap();
        let moments = moments_at(&dec, tau, 6).unwrap();
        for m in 0..=6 {
            let e: f64 = (m..=8).map(|n| falling_factorial(n, m) * slice.e[n]).sum();
            let g: f64 = (m..=8).map(|n| falling_factorial(n, m) * slice.g[n]).sum();
            assert!((moments.e_bar[m] - e).abs() <= 1e-9 * (1.0 + e), "e {m}");
            assert!((moments.g_bar[m] - g).abs() <= 1e-9 * (1.0 + g), "g {m}");
        }
    }
}

#[test]
fn eigenvalues_and_weights_decay() {
    let p = ModelParams::new(5.0).unwrap();
    let dec = project(&p, &InitialState::fock_ground(8)).unwrap();
    for entry in dec.entries.values() {
        assert!(entry.mode.lambda.re <= -1.0 + 1e-12);
        for tau in [0.5, 2.0, 7.0] {
            let weight = (entry.amplitude * (entry.mode.lambda * tau).exp()).norm();
            assert!(weight <= entry.amplitude.norm() * (-tau).exp() * (1.0 + 1e-12));
        }
    }
}

#[test]
fn relaxes_to_vacuum() {
    let p = ModelParams::new(5.0).unwrap();
    let dec = project(&p, &InitialState::fock_ground(6)).unwrap();
    let slice = state_at(&dec, 50.0, 10).unwrap();
    assert!((slice.g[0] - 1.0).abs() < 1e-12);
    assert!(slice.e.iter().all(|x| x.abs() < 1e-12));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn physical_along_the_trajectory(seed in any::<u64>(), n_support in 0usize..=10) {
        let p = ModelParams::new(5.0).unwrap();
        let state = random_state(seed, n_support);
        let dec = project(&p, &state).unwrap();
        for tau in grid(3.0, 13) {
            let s = state_at(&dec, tau, n_support + 2).unwrap();
            let m = moments_at(&dec, tau, 0).unwrap();
            prop_assert!((s.trace() - 1.0).abs() <= 1e-8);
            prop_assert!(s.max_imag <= 1e-10);
            prop_assert!(generating_at(&dec, tau).unwrap().max_imag_relative() <= 1e-10);
            for n in 0..=n_support + 2 {
                prop_assert!((-1e-8..=1.0 + 1e-8).contains(&s.e[n]));
                prop_assert!((-1e-8..=1.0 + 1e-8).contains(&s.g[n]));
            }
            prop_assert!(s.e[0] <= m.e_bar[0] + 1e-12);
            prop_assert!((m.e_bar[0] + m.g_bar[0] - 1.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn overdamped_trajectory_stays_real(seed in any::<u64>(), n_support in 0usize..=3) {
        let p = ModelParams::new(0.05).unwrap();
        let dec = project(&p, &random_state(seed, n_support)).unwrap();
        for tau in grid(3.0, 7) {
            let s = state_at(&dec, tau, n_support + 1).unwrap();
            prop_assert!(s.max_imag <= 1e-10);
            prop_assert!((s.trace() - 1.0).abs() <= 1e-8);
        }
    }

    #[test]
    fn spectral_matches_ladder(seed in any::<u64>(), n_support in 0usize..=5) {
        let p = ModelParams::new(5.0).unwrap();
        let state = random_state(seed, n_support);
        let dec = project(&p, &state).unwrap();
        let taus = [0.0, 0.25, 0.5];
        let n_max = n_support + 4;
        let spectral: Vec<_> = taus.iter().map(|&t| state_at(&dec, t, n_max).unwrap()).collect();
        let ladder: Vec<_> = integrate(&state, &p, &taus, n_support + 20, 1e-4)
            .unwrap()
            .into_iter()
            .map(|s| s.truncated(n_max))
            .collect();
        prop_assert!(max_deviation(&spectral, &ladder).unwrap() <= 1e-6);
    }
}
