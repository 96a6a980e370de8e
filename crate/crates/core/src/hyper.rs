//! Coefficient streams of generalised hypergeometric series `pFq` with complex
//! parameters.
//!
//! Coefficients follow the ratio recursion
//! `t_{n+1} = t_n * prod(upper_i + n) / (prod(lower_j + n) * (n + 1))`, with
//! `t_0 = 1`. An upper parameter at a nonpositive integer `-k` terminates the
//! series after `t_k`; the terms past it are stored as exact zeros.
//!
//! Terminating sums alternate in sign and lose precision for large degrees
//! and large `a`; degrees up to about 60 are supported in double precision.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::DEFAULT_EPS_PARAM;
use crate::poly::pairwise_sum;

/// Returns `k` if `z` lies within `eps` of `-k` for some integer `k >= 0`.
pub fn nonpositive_integer(z: Complex64, eps: f64) -> Option<usize> {
    if z.re > 0.5 {
        return None;
    }
    let k = libm::round(-z.re).max(0.0);
    ((z + k).norm() <= eps).then_some(k as usize)
}

#[derive(Debug, Clone, PartialEq)]
pub struct HyperSpec {
    pub upper: Vec<Complex64>,
    pub lower: Vec<Complex64>,
    pub n_terms: usize,
    pub eps_param: f64,
}

impl HyperSpec {
    pub fn new(upper: Vec<Complex64>, lower: Vec<Complex64>, n_terms: usize) -> Self {
        Self {
            upper,
            lower,
            n_terms,
            eps_param: DEFAULT_EPS_PARAM,
        }
    }

    pub fn with_eps(mut self, eps_param: f64) -> Self {
        self.eps_param = eps_param;
        self
    }

    /// Index of the last possibly nonzero coefficient, if the series terminates.
    pub fn termination(&self) -> Option<usize> {
        self.upper
            .iter()
            .filter_map(|&p| nonpositive_integer(p, self.eps_param))
            .min()
    }

    fn check_lower(&self, n_terms: usize) -> Result<()> {
        let reach = n_terms.saturating_sub(1);
        let reach = self.termination().map_or(reach, |k| reach.min(k));
        for &b in &self.lower {
            if let Some(j) = nonpositive_integer(b, self.eps_param) {
                if j < reach {
                    return Err(Error::SingularLowerParameter {
                        parameter: b,
                        index: j,
                        mode: None,
                    });
                }
            }
        }
        Ok(())
    }

    fn coeffs_upto(&self, n_terms: usize) -> Result<Vec<Complex64>> {
        self.check_lower(n_terms)?;
        let stop = self.termination();
        let mut out = Vec::with_capacity(n_terms);
        let mut t = Complex64::new(1.0, 0.0);
        for n in 0..n_terms {
            if stop.is_some_and(|k| n > k) {
                out.push(Complex64::new(0.0, 0.0));
                continue;
            }
            out.push(t);
            let nf = n as f64;
            let num = self
                .upper
                .iter()
                .fold(Complex64::new(1.0, 0.0), |acc, p| acc * (p + nf));
            let den = self
                .lower
                .iter()
                .fold(Complex64::new(nf + 1.0, 0.0), |acc, q| acc * (q + nf));
            t = t * num / den;
        }
        Ok(out)
    }

    /// `t_0 .. t_{n_terms - 1}`.
    pub fn series_coeffs(&self) -> Result<Vec<Complex64>> {
        self.coeffs_upto(self.n_terms)
    }

    /// Sum of the terminating series at `arg`; `n_terms` is ignored.
    pub fn eval_terminating(&self, arg: Complex64) -> Result<Complex64> {
        let k = self.termination().ok_or(Error::NotTerminating)?;
        let coeffs = self.coeffs_upto(k + 1)?;
        let mut power = Complex64::new(1.0, 0.0);
        let terms: Vec<Complex64> = coeffs
            .iter()
            .map(|t| {
                let term = t * power;
                power *= arg;
                term
            })
            .collect();
        Ok(pairwise_sum(&terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn zero_upper_collapses() {
        let spec = HyperSpec::new(vec![r(0.0), r(0.5)], vec![r(2.3), r(-0.7)], 4);
        assert_eq!(
            spec.series_coeffs().unwrap(),
            vec![r(1.0), r(0.0), r(0.0), r(0.0)]
        );
        let spec = HyperSpec::new(vec![r(0.0), r(1.5)], vec![r(2.3), r(-0.7)], 1);
        assert_eq!(spec.eval_terminating(r(7.0)).unwrap(), r(1.0));
    }

    #[test]
    fn single_surviving_term() {
        let spec = HyperSpec::new(vec![r(-1.0), r(0.5)], vec![r(3.0), r(4.0)], 3);
        let t = spec.series_coeffs().unwrap();
        assert_eq!(t[0], r(1.0));
        assert!((t[1] - r(-1.0 / 24.0)).norm() < 1e-16);
        assert_eq!(t[2], r(0.0));
    }

    #[test]
    fn two_term_sum() {
        let spec = HyperSpec::new(vec![r(-1.0), r(0.5)], vec![r(2.0), r(3.0)], 0);
        let v = spec.eval_terminating(r(-6.0)).unwrap();
        assert!((v - r(1.5)).norm() < 1e-15);
    }

    #[test]
    fn not_terminating() {
        let spec = HyperSpec::new(vec![r(1.5), r(0.5)], vec![r(2.0)], 5);
        assert_eq!(spec.eval_terminating(r(0.1)), Err(Error::NotTerminating));
        assert_eq!(spec.termination(), None);
    }

    #[test]
    fn singular_lower_parameter() {
        let spec = HyperSpec::new(vec![r(1.0)], vec![r(-2.0 + 1e-12)], 5);
        match spec.series_coeffs() {
            Err(Error::SingularLowerParameter { index, .. }) => assert_eq!(index, 2),
            other => panic!("{other:?}"),
        }
        // not reached before the stream ends
        let spec = HyperSpec::new(vec![r(1.0)], vec![r(-3.0)], 4);
        assert!(spec.series_coeffs().is_ok());
        // not reached before termination
        let spec = HyperSpec::new(vec![r(-2.0)], vec![r(-3.0)], 8);
        assert!(spec.series_coeffs().is_ok());
    }

    #[test]
    fn near_integer_upper_terminates_exactly() {
        let spec = HyperSpec::new(vec![Complex64::new(-2.0 + 1e-12, 1e-12)], vec![r(1.5)], 6);
        let t = spec.series_coeffs().unwrap();
        assert!(t[3..].iter().all(|c| *c == r(0.0)));
        assert_ne!(t[2], r(0.0));
    }
}
