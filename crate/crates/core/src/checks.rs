//! Aggregate self-verification: orthonormality of the mode/adjoint pairing,
//! polynomial residuals of the modes, series residuals of the adjoints, and
//! agreement of the two hypergeometric forms of each `E` component.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::adjoint::{
    build_adjoint, build_f_adjoint, pair, pair_f, pairing_order, verify_adjoint_system,
    verify_adjoint_third_order, AdjointTriple,
};
use crate::error::Result;
use crate::modes::{
    build_f_mode, build_mode, representation_deviation, verify_mode_system, verify_third_order,
    Branch, ModeLabel, ModeTriple,
};
use crate::params::ModelParams;

pub const ORTHONORMALITY_TOL: f64 = 1e-9;
pub const MODE_RESIDUAL_TOL: f64 = 1e-10;
pub const ADJOINT_RESIDUAL_TOL: f64 = 1e-10;
pub const REPRESENTATION_TOL: f64 = 1e-9;

/// Minimum stored adjoint order used for the series residual checks.
const RESIDUAL_ORDER: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub a: f64,
    pub k_max: usize,
    /// `max |pair(r,m; s,k) - delta|` over the coupled branches.
    pub orthonormality: f64,
    pub f_orthonormality: f64,
    pub mode_residual: f64,
    pub mode_third_order: f64,
    pub adjoint_residual: f64,
    pub adjoint_third_order: f64,
    pub representation: f64,
}

impl VerifyReport {
    /// `(name, value, tolerance)` for every check.
    pub fn checks(&self) -> [(&'static str, f64, f64); 7] {
        [
            ("orthonormality", self.orthonormality, ORTHONORMALITY_TOL),
            (
                "f-sector orthonormality",
                self.f_orthonormality,
                ORTHONORMALITY_TOL,
            ),
            (
                "mode system residual",
                self.mode_residual,
                MODE_RESIDUAL_TOL,
            ),
            (
                "mode third-order residual",
                self.mode_third_order,
                MODE_RESIDUAL_TOL,
            ),
            (
                "adjoint system residual",
                self.adjoint_residual,
                ADJOINT_RESIDUAL_TOL,
            ),
            (
                "adjoint third-order residual",
                self.adjoint_third_order,
                ADJOINT_RESIDUAL_TOL,
            ),
            (
                "representation identity",
                self.representation,
                REPRESENTATION_TOL,
            ),
        ]
    }

    pub fn passed(&self) -> bool {
        self.checks()
            .iter()
            .all(|(_, v, tol)| v.is_finite() && v <= tol)
    }
}

/// Largest `|pair - delta|` over all coupled-branch pairs in the two lists.
pub fn orthonormality_deviation(
    adjoints: &[AdjointTriple],
    modes: &[ModeTriple],
    params: &ModelParams,
) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for adj in adjoints {
        for mode in modes {
            let delta = if adj.label == mode.label { 1.0 } else { 0.0 };
            let v = pair(adj, mode, params)?;
            worst = worst.max((v - Complex64::new(delta, 0.0)).norm());
        }
    }
    Ok(worst)
}

pub fn f_orthonormality_deviation(params: &ModelParams, k_max: usize) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for m in 0..=k_max {
        let adj = build_f_adjoint(params, m);
        for k in 0..=k_max {
            let delta = if m == k { 1.0 } else { 0.0 };
            let v = pair_f(&adj, &build_f_mode(k), params)?;
            worst = worst.max((v - Complex64::new(delta, 0.0)).norm());
        }
    }
    Ok(worst)
}

/// Runs every check for indices `0 ..= k_max`. With `perturb = Some(rel)`
/// every adjoint `c''` is scaled by `1 + rel` first.
pub fn run_verification(
    params: &ModelParams,
    k_max: usize,
    perturb: Option<f64>,
) -> Result<VerifyReport> {
    let mut modes = Vec::new();
    let mut adjoints = Vec::new();
    for k in 0..=k_max {
        for b in Branch::COUPLED {
            let label = ModeLabel::new(b, k);
            modes.push(build_mode(params, label)?);
            let order = pairing_order(k_max, k).max(RESIDUAL_ORDER);
            let adj = build_adjoint(params, label, order)?;
            adjoints.push(match perturb {
                Some(rel) => adj.perturb_c_double_prime(rel),
                None => adj,
            });
        }
    }

    let points: Vec<f64> = (1..=20).map(|j| j as f64 / 20.0).collect();
    let mut mode_residual: f64 = 0.0;
    let mut mode_third_order: f64 = 0.0;
    let mut representation: f64 = 0.0;
    for mode in &modes {
        mode_residual = mode_residual.max(verify_mode_system(mode, params));
        mode_third_order = mode_third_order.max(verify_third_order(mode, params));
        representation = representation.max(representation_deviation(params, mode, &points)?);
    }
    let mut adjoint_residual: f64 = 0.0;
    let mut adjoint_third_order: f64 = 0.0;
    for adj in &adjoints {
        adjoint_residual = adjoint_residual.max(verify_adjoint_system(adj, params));
        adjoint_third_order = adjoint_third_order.max(verify_adjoint_third_order(adj, params));
    }

    Ok(VerifyReport {
        a: params.a(),
        k_max,
        orthonormality: orthonormality_deviation(&adjoints, &modes, params)?,
        f_orthonormality: f_orthonormality_deviation(params, k_max)?,
        mode_residual,
        mode_third_order,
        adjoint_residual,
        adjoint_third_order,
        representation,
    })
}
