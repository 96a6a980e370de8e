//! Adjoint modes and the residue pairings that make them a dual basis.
//!
//! Adjoint modes live in `x = a / u` and are entire series (or have a simple
//! pole at the origin), so they are stored as truncated [`LaurentX`] values.
//! Pairing an adjoint with a mode, or with initial data, is the residue at
//! `x = 0` of the summed component products.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hyper::HyperSpec;
use crate::modes::{branch_roots, eigenvalue, Branch, ModeLabel, ModeTriple};
use crate::params::ModelParams;
use crate::poly::{max_abs, pow_f64, LaurentX, PolyU};

/// Normalisation constants `c`, `c'`, `c''` multiplying `Ehat`, `Dhat`, `Hhat`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdjointConstants {
    pub c: Complex64,
    pub c_prime: Complex64,
    pub c_double_prime: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdjointTriple {
    pub label: ModeLabel,
    pub lambda: Complex64,
    /// Number of stored coefficients in each component series.
    pub order: usize,
    pub ehat: LaurentX,
    pub dhat: LaurentX,
    pub hhat: LaurentX,
    pub constants: AdjointConstants,
}

impl AdjointTriple {
    /// Copy with `c''` (and hence `Hhat`) scaled by `1 + rel`.
    pub fn perturb_c_double_prime(&self, rel: f64) -> Self {
        let f = Complex64::new(1.0 + rel, 0.0);
        let mut out = self.clone();
        out.hhat = self.hhat.scale(f);
        out.constants.c_double_prime *= f;
        out
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(self.ehat.coeffs())
            .max(max_abs(self.dhat.coeffs()))
            .max(max_abs(self.hhat.coeffs()))
    }
}

/// Truncation order that lets adjoint `m` pair with every mode `k <= k_max`,
/// with one coefficient of slack.
pub fn pairing_order(k_max: usize, m: usize) -> usize {
    (k_max + 2).saturating_sub(m).max(1)
}

/// The orthonormalising constants for adjoint index `m`.
pub fn adjoint_constants(params: &ModelParams, label: ModeLabel) -> Result<AdjointConstants> {
    params.check_index(label.k)?;
    let a = params.a();
    let m = label.k as f64;
    let denom = params.degenerate_radicand(label.k);
    let r = |x: f64| Complex64::new(x, 0.0);
    match label.branch {
        Branch::Zero => {
            let c_prime = r(2.0 * (m + 1.0) / denom);
            let c = c_prime / r(-(4.0 * a * m + 8.0 * a + 3.0) / 6.0);
            let c_double_prime = c_prime * (libm::sqrt(a) / (2.0 * (m + 1.0)));
            Ok(AdjointConstants {
                c,
                c_prime,
                c_double_prime,
            })
        }
        Branch::Plus | Branch::Minus => {
            let s = label.branch.sign().unwrap_or(0.0);
            let wbar = branch_roots(params, label.k)?.wbar;
            let one_minus = r(1.0) - wbar * s;
            let c_prime = r(-(m + 1.0) / denom);
            // c' = -s (1 - s wbar) / (2 a wbar) * c
            let c = c_prime / (-s * one_minus / (wbar * (2.0 * a)));
            let c_double_prime = c_prime * 2.0 * libm::pow(a, 1.5) / one_minus;
            Ok(AdjointConstants {
                c,
                c_prime,
                c_double_prime,
            })
        }
        Branch::FSector => Err(Error::InvalidLabel(label)),
    }
}

fn series(
    params: &ModelParams,
    label: ModeLabel,
    upper: [Complex64; 2],
    lower: [Complex64; 2],
    order: usize,
    constant: Complex64,
    lo: i64,
) -> Result<LaurentX> {
    let t = HyperSpec::new(upper.to_vec(), lower.to_vec(), order)
        .with_eps(params.eps_param)
        .series_coeffs()
        .map_err(|e| match e {
            Error::SingularLowerParameter {
                parameter, index, ..
            } => Error::SingularLowerParameter {
                parameter,
                index,
                mode: Some((label, params.a())),
            },
            other => other,
        })?;
    Ok(LaurentX::truncated(
        lo,
        t.into_iter().map(|x| x * constant).collect(),
    ))
}

pub fn build_adjoint(
    params: &ModelParams,
    label: ModeLabel,
    order: usize,
) -> Result<AdjointTriple> {
    if order == 0 {
        return Err(Error::InvalidParameter(
            "adjoint truncation order must be at least 1",
        ));
    }
    let constants = adjoint_constants(params, label)?;
    let lambda = eigenvalue(params, label)?;
    let a = params.a();
    let m = label.k as i64;
    let mf = label.k as f64;
    let r = |x: f64| Complex64::new(x, 0.0);
    let (ehat, dhat, hhat) = match label.branch {
        Branch::Zero => {
            let w = branch_roots(params, label.k)?.w;
            let half = r(0.5 * a);
            let low2 = [half + 2.0 + w * 0.5, half + 2.0 - w * 0.5];
            let low1 = [half + 1.0 + w * 0.5, half + 1.0 - w * 0.5];
            (
                series(
                    params,
                    label,
                    [r(mf + 2.0), r(2.5)],
                    low2,
                    order,
                    constants.c,
                    m,
                )?,
                series(
                    params,
                    label,
                    [r(mf + 2.0), r(0.5)],
                    low1,
                    order,
                    constants.c_prime,
                    m,
                )?,
                series(
                    params,
                    label,
                    [r(mf + 1.0), r(1.5)],
                    low1,
                    order,
                    constants.c_double_prime,
                    m - 1,
                )?,
            )
        }
        Branch::Plus | Branch::Minus => {
            let s = label.branch.sign().unwrap_or(0.0);
            let sw = branch_roots(params, label.k)?.wbar * s;
            let top = r(1.0 + a) + sw;
            let up_e = [r(mf + 1.0), r(1.5) + sw * 0.5];
            (
                series(
                    params,
                    label,
                    up_e,
                    [sw * 0.5, top],
                    order,
                    constants.c,
                    m - 1,
                )?,
                series(
                    params,
                    label,
                    [r(mf + 2.0), r(0.5) + sw * 0.5],
                    [r(1.0) + sw * 0.5, top],
                    order,
                    constants.c_prime,
                    m,
                )?,
                series(
                    params,
                    label,
                    up_e,
                    [r(1.0) + sw * 0.5, top],
                    order,
                    constants.c_double_prime,
                    m - 1,
                )?,
            )
        }
        Branch::FSector => return Err(Error::InvalidLabel(label)),
    };
    Ok(AdjointTriple {
        label,
        lambda,
        order,
        ehat,
        dhat,
        hhat,
        constants,
    })
}

/// `Fhat_m(x) = a^-m x^(m-1)`.
///
/// Among the doubles nearest `a^-m`, the one whose product with the `a^m`
/// of [`PolyU::to_laurent_x`] rounds to exactly 1 is used, so the F-sector
/// pairing is exactly `delta_mk`.
pub fn build_f_adjoint(params: &ModelParams, m: usize) -> LaurentX {
    let power = pow_f64(params.a(), m);
    let guess = 1.0 / power;
    let c = (0..=8)
        .flat_map(|i: u64| [guess.to_bits() + i, guess.to_bits() - i])
        .map(f64::from_bits)
        .find(|c| c * power == 1.0)
        .unwrap_or(guess);
    LaurentX::monomial(m as i64 - 1, Complex64::new(c, 0.0))
}

/// Residue of `Ehat E + Dhat D + Hhat H` with the mode mapped to `x`.
pub fn pair(adj: &AdjointTriple, mode: &ModeTriple, params: &ModelParams) -> Result<Complex64> {
    pair_components(adj, &mode.e, &mode.d, &mode.h, params)
}

/// Residue pairing of an adjoint against arbitrary `E`, `D`, `H` polynomials in `u`.
pub fn pair_components(
    adj: &AdjointTriple,
    e: &PolyU,
    d: &PolyU,
    h: &PolyU,
    params: &ModelParams,
) -> Result<Complex64> {
    let a = params.a();
    let re = (&adj.ehat * &e.to_laurent_x(a)).residue()?;
    let rd = (&adj.dhat * &d.to_laurent_x(a)).residue()?;
    let rh = (&adj.hhat * &h.to_laurent_x(a)).residue()?;
    Ok(re + rd + rh)
}

pub fn pair_f(adj_f: &LaurentX, mode_f: &PolyU, params: &ModelParams) -> Result<Complex64> {
    (adj_f * &mode_f.to_laurent_x(params.a())).residue()
}

fn max_known(series: &[LaurentX]) -> f64 {
    series
        .iter()
        .map(|s| max_abs(s.coeffs()))
        .fold(0.0, f64::max)
}

/// Maximum residual coefficient of the adjoint system below the truncation
/// horizon, relative to the largest stored adjoint coefficient.
pub fn verify_adjoint_system(adj: &AdjointTriple, params: &ModelParams) -> f64 {
    let a = params.a();
    let sa = libm::sqrt(a);
    let l = adj.lambda;
    let c = |x: f64| Complex64::new(x, 0.0);
    let (e, d, h) = (&adj.ehat, &adj.dhat, &adj.hhat);
    let (de, dd, dh) = (e.derivative(), d.derivative(), h.derivative());
    let sum = |terms: &[LaurentX]| {
        terms
            .iter()
            .skip(1)
            .fold(terms[0].clone(), |acc, t| &acc + t)
    };

    let r_d = sum(&[
        dd.shift(1).scale(c(-2.0)),
        d.scale(c(-2.0) - l),
        dh.shift(2).scale(c(2.0 / sa)),
        h.shift(1).scale(c(4.0 / sa)),
    ]);
    // x (x - a) Hhat' = x^2 Hhat' - a x Hhat'
    let r_e = sum(&[
        de.shift(1).scale(c(-2.0)),
        e.scale(c(-2.0) - l),
        d.shift(-1).scale(c(-2.0 * a)),
        dh.shift(2).scale(c(-4.0 / sa)),
        dh.shift(1).scale(c(4.0 * sa)),
        h.shift(1).scale(c(-8.0 / sa)),
        h.scale(c(8.0 * sa)),
    ]);
    let r_h = sum(&[
        dh.shift(1).scale(c(-2.0)),
        h.scale(c(-3.0) - l),
        e.scale(c(-sa)),
    ]);
    let scale = adj.max_abs();
    if scale == 0.0 {
        return 0.0;
    }
    max_known(&[r_d, r_e, r_h]) / scale
}

/// Residual of the third-order equation for `Ehat` alone, relative to the
/// same expression built from coefficient magnitudes.
pub fn verify_adjoint_third_order(adj: &AdjointTriple, params: &ModelParams) -> f64 {
    let a = params.a();
    let l = adj.lambda;
    let la = l.norm();
    let c = |x: f64| Complex64::new(x, 0.0);
    let e0 = &adj.ehat;
    let e1 = e0.derivative();
    let e2 = e1.derivative();
    let e3 = e2.derivative();
    let sum = |terms: &[LaurentX]| {
        terms
            .iter()
            .skip(1)
            .fold(terms[0].clone(), |acc, t| &acc + t)
    };
    let residual = sum(&[
        e3.shift(3).scale(c(8.0)),
        e2.shift(3).scale(c(-8.0)),
        e2.shift(2).scale((l * 3.0 + 2.0 * a + 13.0) * 4.0),
        e1.shift(2).scale((l + 12.0) * -4.0),
        e1.shift(1)
            .scale((l * l * 3.0 + l * 2.0 * a + l * 20.0 + 14.0 * a + 32.0) * 2.0),
        e0.shift(1).scale((l + 6.0) * -8.0),
        e0.scale(l * l * l + l * l * 7.0 + l * 8.0 * a + l * 14.0 + 8.0 * a + 8.0),
    ]);
    let (a0, a1, a2, a3) = (e0.abs(), e1.abs(), e2.abs(), e3.abs());
    let scale = sum(&[
        a3.shift(3).scale(c(8.0)),
        a2.shift(3).scale(c(8.0)),
        a2.shift(2).scale(c(4.0 * (3.0 * la + 2.0 * a + 13.0))),
        a1.shift(2).scale(c(4.0 * (la + 12.0))),
        a1.shift(1).scale(c(
            2.0 * (3.0 * la * la + 2.0 * a * la + 20.0 * la + 14.0 * a + 32.0)
        )),
        a0.shift(1).scale(c(8.0 * (la + 6.0))),
        a0.scale(c(la * la * la
            + 7.0 * la * la
            + 8.0 * a * la
            + 14.0 * la
            + 8.0 * a
            + 8.0)),
    ]);
    let scale = max_abs(scale.coeffs());
    if scale == 0.0 {
        0.0
    } else {
        max_abs(residual.coeffs()) / scale
    }
}
