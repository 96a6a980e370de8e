//! The two canonical representations used throughout the crate.
//!
//! Modes are polynomials in `u = 1 - z` ([`PolyU`]). Pairings between modes
//! and adjoint modes are residues of Laurent series in `x = a / u`
//! ([`LaurentX`]); adjoint series are stored truncated, with a horizon above
//! which nothing is known.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Largest `n` covered by the exact Pascal table.
pub const BINOMIAL_CAP: usize = 64;

static PASCAL: [[u64; BINOMIAL_CAP + 1]; BINOMIAL_CAP + 1] = {
    let mut t = [[0u64; BINOMIAL_CAP + 1]; BINOMIAL_CAP + 1];
    let mut n = 0;
    while n <= BINOMIAL_CAP {
        t[n][0] = 1;
        let mut k = 1;
        while k <= n {
            t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
            k += 1;
        }
        n += 1;
    }
    t
};

/// `binom(n, k)` as a float; exact integers from the Pascal table for `n <= 64`.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    if n <= BINOMIAL_CAP {
        return PASCAL[n][k] as f64;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Pairwise (cascade) summation.
pub fn pairwise_sum(terms: &[Complex64]) -> Complex64 {
    if terms.len() <= 8 {
        return terms.iter().fold(ZERO, |acc, t| acc + t);
    }
    let mid = terms.len() / 2;
    pairwise_sum(&terms[..mid]) + pairwise_sum(&terms[mid..])
}

pub fn max_abs(coeffs: &[Complex64]) -> f64 {
    coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// `base^exp` by repeated multiplication; the power used by [`PolyU::to_laurent_x`].
pub fn pow_f64(base: f64, exp: usize) -> f64 {
    (0..exp).fold(1.0, |acc, _| acc * base)
}

/// Polynomial in `u` with complex coefficients; index `m` holds `u^m`.
///
/// Trailing exact zeros are trimmed, so the zero polynomial has no
/// coefficients.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PolyU {
    coeffs: Vec<Complex64>,
}

impl PolyU {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last() == Some(&ZERO) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// `c u^m`.
    pub fn monomial(m: usize, c: Complex64) -> Self {
        let mut coeffs = vec![ZERO; m + 1];
        coeffs[m] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize) -> Complex64 {
        self.coeffs.get(m).copied().unwrap_or(ZERO)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.coeffs)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplies by `u^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(m, c)| c * m as f64)
                .collect(),
        )
    }

    /// Coefficient-wise magnitudes, for building roundoff scales.
    pub fn abs(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|c| Complex64::new(c.norm(), 0.0))
                .collect(),
        )
    }

    pub fn eval(&self, u: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, c| acc * u + c)
    }

    /// Rebases `sum_n vals[n] z^n` onto `u = 1 - z`.
    pub fn from_z_coeffs(vals: &[Complex64]) -> Self {
        Self::new(binomial_flip(vals, vals.len().saturating_sub(1)))
    }

    pub fn from_real_z_coeffs(vals: &[f64]) -> Self {
        let vals: Vec<Complex64> = vals.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        Self::from_z_coeffs(&vals)
    }

    /// Coefficients of `z^0 .. z^n_max` of `p(1 - z)`.
    pub fn to_z_coeffs(&self, n_max: usize) -> Vec<Complex64> {
        binomial_flip(&self.coeffs, n_max)
    }

    /// Image under `u^m -> a^m x^-m`.
    pub fn to_laurent_x(&self, a: f64) -> LaurentX {
        let Some(deg) = self.degree() else {
            return LaurentX::zero();
        };
        let coeffs = (0..=deg)
            .map(|i| {
                let m = deg - i;
                self.coeffs[m] * pow_f64(a, m)
            })
            .collect();
        LaurentX::exact(-(deg as i64), coeffs)
    }
}

/// `out[j] = (-1)^j sum_{n >= j} v[n] binom(n, j)`: the coefficient map of
/// `p(t) -> p(1 - t)`, which is its own inverse.
fn binomial_flip(vals: &[Complex64], j_max: usize) -> Vec<Complex64> {
    let mut terms = Vec::with_capacity(vals.len());
    (0..=j_max)
        .map(|j| {
            terms.clear();
            terms.extend(
                vals.iter()
                    .enumerate()
                    .skip(j)
                    .map(|(n, v)| v * binomial(n, j)),
            );
            let s = pairwise_sum(&terms);
            if j % 2 == 1 {
                -s
            } else {
                s
            }
        })
        .collect()
}

impl Add for &PolyU {
    type Output = PolyU;

    fn add(self, rhs: &PolyU) -> PolyU {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyU::new((0..n).map(|m| self.coeff(m) + rhs.coeff(m)).collect())
    }
}

impl Sub for &PolyU {
    type Output = PolyU;

    fn sub(self, rhs: &PolyU) -> PolyU {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyU::new((0..n).map(|m| self.coeff(m) - rhs.coeff(m)).collect())
    }
}

impl Neg for &PolyU {
    type Output = PolyU;

    fn neg(self) -> PolyU {
        PolyU::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &PolyU {
    type Output = PolyU;

    fn mul(self, rhs: &PolyU) -> PolyU {
        if self.is_zero() || rhs.is_zero() {
            return PolyU::zero();
        }
        let mut out = vec![ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in rhs.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        PolyU::new(out)
    }
}

/// Laurent polynomial or truncated Laurent series in `x`.
///
/// `coeffs[i]` is the coefficient of `x^(lo + i)`. An exact value is zero
/// outside the stored range. A truncated value is only known up to
/// `x^(lo + len - 1)`; anything above that horizon is unknown.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentX {
    lo: i64,
    coeffs: Vec<Complex64>,
    truncated: bool,
}

impl LaurentX {
    pub fn exact(lo: i64, coeffs: Vec<Complex64>) -> Self {
        Self {
            lo,
            coeffs,
            truncated: false,
        }
    }

    pub fn truncated(lo: i64, coeffs: Vec<Complex64>) -> Self {
        Self {
            lo,
            coeffs,
            truncated: true,
        }
    }

    pub fn zero() -> Self {
        Self::exact(0, Vec::new())
    }

    /// `c x^power`.
    pub fn monomial(power: i64, c: Complex64) -> Self {
        Self::exact(power, vec![c])
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    fn top(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    /// Highest power whose coefficient is known, `None` if every power is.
    pub fn horizon(&self) -> Option<i64> {
        self.truncated.then(|| self.top())
    }

    fn is_exact_zero(&self) -> bool {
        !self.truncated && self.coeffs.iter().all(|c| *c == ZERO)
    }

    /// Coefficient of `x^power`, `None` above the truncation horizon.
    pub fn coeff(&self, power: i64) -> Option<Complex64> {
        if self.truncated && power > self.top() {
            return None;
        }
        if power < self.lo || power > self.top() {
            return Some(ZERO);
        }
        Some(self.coeffs[(power - self.lo) as usize])
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            truncated: self.truncated,
        }
    }

    /// Coefficient-wise magnitudes, for building roundoff scales.
    pub fn abs(&self) -> Self {
        Self {
            lo: self.lo,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| Complex64::new(c.norm(), 0.0))
                .collect(),
            truncated: self.truncated,
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            lo: self.lo + k,
            coeffs: self.coeffs.clone(),
            truncated: self.truncated,
        }
    }

    /// d/dx. The horizon drops by one.
    pub fn derivative(&self) -> Self {
        Self {
            lo: self.lo - 1,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * (self.lo + i as i64) as f64)
                .collect(),
            truncated: self.truncated,
        }
    }

    /// Coefficient of `x^-1`, i.e. `(1 / 2 pi i) * contour integral around 0`.
    pub fn residue(&self) -> Result<Complex64> {
        self.coeff(-1).ok_or(Error::InsufficientTruncation {
            known_up_to: self.top(),
        })
    }

    /// Inverse of [`PolyU::to_laurent_x`]; `None` for truncated values or
    /// positive powers.
    pub fn to_poly_u(&self, a: f64) -> Option<PolyU> {
        if self.truncated {
            return None;
        }
        let mut out = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            let power = self.lo + i as i64;
            if *c == ZERO {
                continue;
            }
            if power > 0 {
                return None;
            }
            let m = (-power) as usize;
            if out.len() <= m {
                out.resize(m + 1, ZERO);
            }
            out[m] = c / pow_f64(a, m);
        }
        Some(PolyU::new(out))
    }

    /// Pointwise evaluation of the stored terms.
    pub fn eval(&self, x: Complex64) -> Complex64 {
        let terms: Vec<Complex64> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * x.powi((self.lo + i as i64) as i32))
            .collect();
        pairwise_sum(&terms)
    }
}

impl Add for &LaurentX {
    type Output = LaurentX;

    fn add(self, rhs: &LaurentX) -> LaurentX {
        let lo = self.lo.min(rhs.lo);
        let truncated = self.truncated || rhs.truncated;
        let top = match (self.horizon(), rhs.horizon()) {
            (Some(x), Some(y)) => x.min(y),
            (Some(x), None) | (None, Some(x)) => x,
            (None, None) => self.top().max(rhs.top()),
        };
        let coeffs = (lo..=top)
            .map(|p| self.coeff(p).unwrap_or(ZERO) + rhs.coeff(p).unwrap_or(ZERO))
            .collect();
        LaurentX {
            lo,
            coeffs,
            truncated,
        }
    }
}

impl Sub for &LaurentX {
    type Output = LaurentX;

    fn sub(self, rhs: &LaurentX) -> LaurentX {
        self + &rhs.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul for &LaurentX {
    type Output = LaurentX;

    fn mul(self, rhs: &LaurentX) -> LaurentX {
        if self.is_exact_zero() || rhs.is_exact_zero() {
            return LaurentX::zero();
        }
        let lo = self.lo + rhs.lo;
        let full_top = self.top() + rhs.top();
        let truncated = self.truncated || rhs.truncated;
        // unknown terms of a truncated factor first reach power horizon + 1 + other.lo
        let mut top = full_top;
        if let Some(h) = self.horizon() {
            top = top.min(h + rhs.lo);
        }
        if let Some(h) = rhs.horizon() {
            top = top.min(h + self.lo);
        }
        let mut terms = Vec::new();
        let coeffs = (lo..=top)
            .map(|p| {
                terms.clear();
                for (i, x) in self.coeffs.iter().enumerate() {
                    let j = p - lo - i as i64;
                    if j >= 0 && (j as usize) < rhs.coeffs.len() {
                        terms.push(x * rhs.coeffs[j as usize]);
                    }
                }
                pairwise_sum(&terms)
            })
            .collect();
        LaurentX {
            lo,
            coeffs,
            truncated,
        }
    }
}
