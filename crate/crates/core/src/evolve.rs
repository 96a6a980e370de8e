//! Time-dependent generating functions and the physical quantities read off
//! from them.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::{pairwise_sum, PolyU};
use crate::projection::SpectralDecomposition;

/// Largest `Re(lambda) tau` accepted when forming `exp(lambda tau)`. Decaying
/// exponentials may underflow harmlessly; only growth is capped.
pub const LAMBDA_TAU_CAP: f64 = 200.0;
/// Imaginary parts above this signal a construction error.
pub const REALITY_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratingSet {
    pub tau: f64,
    pub d: PolyU,
    pub e: PolyU,
    pub h: PolyU,
    pub f: PolyU,
    /// `G = D - (1 - u) E`, generating function of `g_n`.
    pub g: PolyU,
}

impl GeneratingSet {
    /// Largest imaginary coefficient relative to the largest real one.
    pub fn max_imag_relative(&self) -> f64 {
        let all = || {
            [&self.d, &self.e, &self.h, &self.f, &self.g]
                .into_iter()
                .flat_map(|p| p.coeffs().iter())
        };
        let im = all().map(|c| libm::fabs(c.im)).fold(0.0, f64::max);
        let re = all().map(|c| libm::fabs(c.re)).fold(0.0, f64::max);
        if re == 0.0 {
            im
        } else {
            im / re
        }
    }
}

/// Density matrix elements at one time, for `n = 0 ..= n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateSlice {
    pub tau: f64,
    pub e: Vec<f64>,
    pub g: Vec<f64>,
    pub h: Vec<f64>,
    pub f: Vec<f64>,
    pub d: Vec<f64>,
    /// Largest discarded imaginary part.
    pub max_imag: f64,
}

impl StateSlice {
    pub fn n_max(&self) -> usize {
        self.e.len().saturating_sub(1)
    }

    pub fn trace(&self) -> f64 {
        self.g.iter().chain(&self.e).sum()
    }

    /// Copy restricted to `n <= n_max`.
    pub fn truncated(&self, n_max: usize) -> Self {
        let cut = |v: &Vec<f64>| v[..v.len().min(n_max + 1)].to_vec();
        Self {
            tau: self.tau,
            e: cut(&self.e),
            g: cut(&self.g),
            h: cut(&self.h),
            f: cut(&self.f),
            d: cut(&self.d),
            max_imag: self.max_imag,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FactorialMoments {
    pub tau: f64,
    pub e_bar: Vec<f64>,
    pub g_bar: Vec<f64>,
    pub max_imag: f64,
}

/// `sum_i w_i p_i`, coefficient-wise pairwise summation.
fn weighted_sum<'a>(terms: impl Iterator<Item = (Complex64, &'a PolyU)>) -> PolyU {
    let terms: Vec<(Complex64, &PolyU)> = terms.collect();
    let len = terms
        .iter()
        .map(|(_, p)| p.coeffs().len())
        .max()
        .unwrap_or(0);
    let mut scratch = Vec::with_capacity(terms.len());
    let coeffs = (0..len)
        .map(|m| {
            scratch.clear();
            scratch.extend(terms.iter().map(|(w, p)| w * p.coeff(m)));
            pairwise_sum(&scratch)
        })
        .collect();
    PolyU::new(coeffs)
}

pub fn generating_at(decomp: &SpectralDecomposition, tau: f64) -> Result<GeneratingSet> {
    let growth = decomp
        .entries
        .values()
        .map(|e| e.mode.lambda.re)
        .fold(f64::NEG_INFINITY, f64::max);
    if !(tau.is_finite() && tau >= 0.0) || growth * tau > LAMBDA_TAU_CAP {
        return Err(Error::TimeOutOfRange {
            tau,
            cap: LAMBDA_TAU_CAP,
        });
    }

    let weights: Vec<Complex64> = decomp
        .entries
        .values()
        .map(|entry| entry.amplitude * (entry.mode.lambda * tau).exp())
        .collect();
    let pick = |f: fn(&crate::modes::ModeTriple) -> &PolyU| {
        weighted_sum(
            weights
                .iter()
                .zip(decomp.entries.values())
                .map(move |(w, entry)| (*w, f(&entry.mode))),
        )
    };
    let e = pick(|m| &m.e);
    let h = pick(|m| &m.h);
    let d = &pick(|m| &m.d) + &PolyU::constant(Complex64::new(decomp.d_constant, 0.0));
    let f = PolyU::new(
        (0..=decomp.f_entries.keys().copied().max().unwrap_or(0))
            .map(|k| {
                let a = decomp.f_entries.get(&k).copied().unwrap_or_default();
                a * libm::exp(-(2.0 * k as f64 + 1.0) * tau)
            })
            .collect(),
    );
    let one_minus_u = PolyU::from_real(&[1.0, -1.0]);
    let g = &d - &(&one_minus_u * &e);
    Ok(GeneratingSet { tau, d, e, h, f, g })
}

fn split_real(values: &[Complex64], max_imag: &mut f64) -> Vec<f64> {
    values
        .iter()
        .map(|c| {
            *max_imag = max_imag.max(libm::fabs(c.im));
            c.re
        })
        .collect()
}

pub fn state_at(decomp: &SpectralDecomposition, tau: f64, n_max: usize) -> Result<StateSlice> {
    let set = generating_at(decomp, tau)?;
    let mut max_imag = 0.0;
    let e = split_real(&set.e.to_z_coeffs(n_max), &mut max_imag);
    let d = split_real(&set.d.to_z_coeffs(n_max), &mut max_imag);
    let h = split_real(&set.h.to_z_coeffs(n_max), &mut max_imag);
    let f = split_real(&set.f.to_z_coeffs(n_max), &mut max_imag);
    if max_imag > REALITY_TOLERANCE {
        return Err(Error::RealityViolation { imag: max_imag });
    }
    let g = (0..=n_max)
        .map(|n| if n == 0 { d[0] } else { d[n] - e[n - 1] })
        .collect();
    Ok(StateSlice {
        tau,
        e,
        g,
        h,
        f,
        d,
        max_imag,
    })
}

pub fn moments_at(
    decomp: &SpectralDecomposition,
    tau: f64,
    m_max: usize,
) -> Result<FactorialMoments> {
    let set = generating_at(decomp, tau)?;
    let mut max_imag = 0.0;
    let mut moments = |p: &PolyU| -> Vec<f64> {
        let mut factorial = 1.0;
        (0..=m_max)
            .map(|m| {
                if m > 0 {
                    factorial *= m as f64;
                }
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                let v = p.coeff(m) * (sign * factorial);
                max_imag = f64::max(max_imag, libm::fabs(v.im));
                v.re
            })
            .collect()
    };
    let e_bar = moments(&set.e);
    let g_bar = moments(&set.g);
    if max_imag > REALITY_TOLERANCE {
        return Err(Error::RealityViolation { imag: max_imag });
    }
    Ok(FactorialMoments {
        tau,
        e_bar,
        g_bar,
        max_imag,
    })
}
