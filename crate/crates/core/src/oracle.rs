//! Brute-force reference: classical RK4 on the photon-number ladder equations
//! for `d_n`, `e_n`, `f_n`, `h_n`, truncated at `n_trunc`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::evolve::StateSlice;
use crate::params::ModelParams;
use crate::projection::InitialState;

/// Minimum head-room between the initial support and the truncation level.
pub const TRUNCATION_MARGIN: usize = 20;
/// Largest top-level occupation tolerated at any output time.
pub const TOP_LEVEL_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_STEP: f64 = 1e-4;

/// Ladder state for `n = 0 ..= n_trunc`; index `n_trunc + 1` reads as zero.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedLadder {
    pub d: Vec<f64>,
    pub e: Vec<f64>,
    pub f: Vec<f64>,
    pub h: Vec<f64>,
}

impl TruncatedLadder {
    pub fn zeros(n_trunc: usize) -> Self {
        let z = vec![0.0; n_trunc + 1];
        Self {
            d: z.clone(),
            e: z.clone(),
            f: z.clone(),
            h: z,
        }
    }

    pub fn from_state(state: &InitialState, n_trunc: usize) -> Self {
        let mut out = Self::zeros(n_trunc);
        let copy = |dst: &mut Vec<f64>, src: &[f64]| {
            for (x, y) in dst.iter_mut().zip(src) {
                *x = *y;
            }
        };
        copy(&mut out.d, &state.d);
        copy(&mut out.e, &state.e);
        copy(&mut out.f, &state.f);
        copy(&mut out.h, &state.h);
        out
    }

    pub fn n_trunc(&self) -> usize {
        self.d.len() - 1
    }

    pub fn trace(&self) -> f64 {
        self.d.iter().sum()
    }

    /// `self + s * other`.
    fn axpy(&self, s: f64, other: &Self) -> Self {
        let mix = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(a, b)| a + s * b).collect();
        Self {
            d: mix(&self.d, &other.d),
            e: mix(&self.e, &other.e),
            f: mix(&self.f, &other.f),
            h: mix(&self.h, &other.h),
        }
    }

    fn to_slice(&self, tau: f64) -> StateSlice {
        let n = self.n_trunc();
        let g = (0..=n)
            .map(|i| {
                if i == 0 {
                    self.d[0]
                } else {
                    self.d[i] - self.e[i - 1]
                }
            })
            .collect();
        StateSlice {
            tau,
            e: self.e.clone(),
            g,
            h: self.h.clone(),
            f: self.f.clone(),
            d: self.d.clone(),
            max_imag: 0.0,
        }
    }
}

/// Time derivatives of the ladder.
pub fn rhs(state: &TruncatedLadder, params: &ModelParams) -> TruncatedLadder {
    let alpha = params.alpha();
    let top = state.n_trunc();
    let up = |v: &[f64], n: usize| if n < top { v[n + 1] } else { 0.0 };
    let mut out = TruncatedLadder::zeros(top);
    for n in 0..=top {
        let nf = n as f64;
        let (d, e, f, h) = (&state.d, &state.e, &state.f, &state.h);
        let lower_e = if n > 0 { 2.0 * e[n - 1] } else { 0.0 };
        out.d[n] = 2.0 * (nf + 1.0) * up(d, n) - 2.0 * nf * d[n] - 2.0 * e[n] + lower_e;
        out.e[n] = 2.0 * (nf + 1.0) * up(e, n) - 2.0 * nf * e[n] - alpha * h[n];
        out.f[n] = 2.0 * (nf + 1.0) * up(f, n) - (2.0 * nf + 1.0) * f[n];
        out.h[n] = 2.0 * (nf + 1.0) * up(h, n)
            - (2.0 * nf + 1.0) * h[n]
            - 2.0 * alpha * (nf + 1.0) * up(d, n)
            + 4.0 * alpha * (nf + 1.0) * e[n];
    }
    out
}

fn rk4_step(y: &TruncatedLadder, dt: f64, params: &ModelParams) -> TruncatedLadder {
    let k1 = rhs(y, params);
    let k2 = rhs(&y.axpy(0.5 * dt, &k1), params);
    let k3 = rhs(&y.axpy(0.5 * dt, &k2), params);
    let k4 = rhs(&y.axpy(dt, &k3), params);
    y.axpy(dt / 6.0, &k1)
        .axpy(dt / 3.0, &k2)
        .axpy(dt / 3.0, &k3)
        .axpy(dt / 6.0, &k4)
}

/// Integrates from `tau = 0` and reports a slice at every grid time. Each
/// interval is split into equal steps no longer than `step`, so grid points
/// are hit exactly.
pub fn integrate(
    state0: &InitialState,
    params: &ModelParams,
    tau_grid: &[f64],
    n_trunc: usize,
    step: f64,
) -> Result<Vec<StateSlice>> {
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::InvalidParameter("step must be positive"));
    }
    if n_trunc < state0.n_support + TRUNCATION_MARGIN {
        return Err(Error::TruncationTooTight {
            n_trunc,
            reason: "below initial support + 20",
        });
    }
    let mut y = TruncatedLadder::from_state(state0, n_trunc);
    let mut now = 0.0;
    let mut out = Vec::with_capacity(tau_grid.len());
    for &target in tau_grid {
        if !(target.is_finite() && target >= now) {
            return Err(Error::InvalidParameter(
                "tau grid must be nondecreasing from 0",
            ));
        }
        let span = target - now;
        if span > 0.0 {
            let steps = libm::ceil(span / step - 1e-9).max(1.0) as usize;
            let dt = span / steps as f64;
            for _ in 0..steps {
                y = rk4_step(&y, dt, params);
            }
        }
        now = target;
        if libm::fabs(y.d[n_trunc]) + libm::fabs(y.e[n_trunc]) > TOP_LEVEL_TOLERANCE {
            return Err(Error::TruncationTooTight {
                n_trunc,
                reason: "top level occupied",
            });
        }
        out.push(y.to_slice(target));
    }
    Ok(out)
}

/// Largest absolute difference over time, photon number, and the `e`, `g`,
/// `h`, `f` families.
pub fn max_deviation(lhs: &[StateSlice], rhs: &[StateSlice]) -> Result<f64> {
    if lhs.len() != rhs.len() {
        return Err(Error::GridMismatch);
    }
    let mut worst: f64 = 0.0;
    for (x, y) in lhs.iter().zip(rhs) {
        if x.tau != y.tau || x.e.len() != y.e.len() {
            return Err(Error::GridMismatch);
        }
        for (u, v) in [(&x.e, &y.e), (&x.g, &y.g), (&x.h, &y.h), (&x.f, &y.f)] {
            if u.len() != v.len() {
                return Err(Error::GridMismatch);
            }
            for (p, q) in u.iter().zip(v) {
                worst = worst.max(libm::fabs(p - q));
            }
        }
    }
    Ok(worst)
}
