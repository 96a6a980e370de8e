//! Model parameters in scaled units.
//!
//! Times are measured as `tau = kappa t` and the coupling enters only through
//! `a = alpha^2 = (f / kappa)^2`.

use crate::error::{Error, Result};

/// Default tolerance for detecting `1 - 4a(k+1) = 0`.
pub const DEFAULT_EPS_DEGENERATE: f64 = 1e-9;
/// Default tolerance for lower hypergeometric parameters hitting `0, -1, -2, ...`.
pub const DEFAULT_EPS_PARAM: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    a: f64,
    pub eps_degenerate: f64,
    pub eps_param: f64,
}

impl ModelParams {
    pub fn new(a: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::InvalidParameter("a must be finite and positive"));
        }
        Ok(Self {
            a,
            eps_degenerate: DEFAULT_EPS_DEGENERATE,
            eps_param: DEFAULT_EPS_PARAM,
        })
    }

    /// Squared scaled coupling.
    pub fn a(&self) -> f64 {
        self.a
    }

    /// Scaled coupling `alpha = sqrt(a)`.
    pub fn alpha(&self) -> f64 {
        libm::sqrt(self.a)
    }

    /// `1 - 4a(k+1)`, the radicand of the branch root `wbar_k`.
    pub fn degenerate_radicand(&self, k: usize) -> f64 {
        1.0 - 4.0 * self.a * (k as f64 + 1.0)
    }

    /// Fails if mode index `k` sits on an exceptional point.
    pub fn check_index(&self, k: usize) -> Result<()> {
        let radicand = self.degenerate_radicand(k);
        if libm::fabs(radicand) <= self.eps_degenerate {
            return Err(Error::ExceptionalPoint {
                a: self.a,
                k,
                radicand,
            });
        }
        Ok(())
    }

    /// First mode index at or below `k_max` that hits an exceptional point.
    pub fn first_exceptional(&self, k_max: usize) -> Option<usize> {
        (0..=k_max).find(|&k| self.check_index(k).is_err())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nonpositive_coupling() {
        assert!(ModelParams::new(0.0).is_err());
        assert!(ModelParams::new(-1.0).is_err());
        assert!(ModelParams::new(f64::NAN).is_err());
        assert!(ModelParams::new(5.0).is_ok());
    }

    #[test]
    fn exceptional_points() {
        let p = ModelParams::new(0.25).unwrap();
        assert!(matches!(
            p.check_index(0),
            Err(Error::ExceptionalPoint { k: 0, .. })
        ));
        assert!(p.check_index(1).is_ok());
        // 4 * 0.05 * 5 rounds to exactly 1
        let p = ModelParams::new(0.05).unwrap();
        assert_eq!(p.first_exceptional(10), Some(4));
        assert_eq!(ModelParams::new(5.0).unwrap().first_exceptional(60), None);
    }
}
