#![allow(dead_code)]

use jcmodes_core::projection::ingest;
use jcmodes_core::{Complex64, InitialState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A physical diagonal-sector state on `0 ..= n_support`: populations sum to
/// one and every coherence obeys `|coh_n|^2 <= e_n g_{n+1}`.
pub fn random_state(seed: u64, n_support: usize) -> InitialState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = n_support + 1;
    let mut g: Vec<f64> = (0..len).map(|_| rng.random::<f64>()).collect();
    let mut e: Vec<f64> = (0..len).map(|_| rng.random::<f64>()).collect();
    let total: f64 = g.iter().chain(&e).sum();
    g.iter_mut().chain(e.iter_mut()).for_each(|x| *x /= total);
    let coh = (0..len)
        .map(|n| {
            let bound = if n + 1 < len {
                (e[n] * g[n + 1]).sqrt()
            } else {
                0.0
            };
            let r = rng.random::<f64>() * bound;
            Complex64::from_polar(r, rng.random_range(0.0..core::f64::consts::TAU))
        })
        .collect::<Vec<_>>();
    ingest(&g, &e, &coh).expect("random state is valid")
}

pub fn grid(tau_max: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| tau_max * i as f64 / (points - 1) as f64)
        .collect()
}
