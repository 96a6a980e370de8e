//! Eigenvalues and eigenmodes of the generating-function equations in `u`.
//!
//! The decoupled F-sector has monomial modes `u^k` with eigenvalue `-2k-1`.
//! The coupled E/D/H system has three branches per index `k`:
//!
//! - `Zero`: `lambda = -2k-1`,
//! - `Plus` / `Minus`: `lambda = -2k-1 +/- wbar_k`, `wbar_k = sqrt(1 - 4a(k+1))`.
//!
//! Each component is `(u/a)^k` (or `(u/a)^{k+1}` for D) times a terminating
//! `2F2(...; -a/u)`, so the modes are built coefficient by coefficient from
//! the hypergeometric stream rather than by pointwise evaluation.

use alloc::vec;
use core::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hyper::HyperSpec;
use crate::params::ModelParams;
use crate::poly::{max_abs, PolyU};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Branch {
    Zero,
    Plus,
    Minus,
    FSector,
}

impl Branch {
    /// The three branches of the coupled E/D/H system.
    pub const COUPLED: [Branch; 3] = [Branch::Zero, Branch::Plus, Branch::Minus];

    /// Sign multiplying `wbar_k` in the eigenvalue; `None` for the F-sector.
    pub fn sign(self) -> Option<f64> {
        match self {
            Branch::Zero => Some(0.0),
            Branch::Plus => Some(1.0),
            Branch::Minus => Some(-1.0),
            Branch::FSector => None,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Zero => "0",
            Branch::Plus => "+",
            Branch::Minus => "-",
            Branch::FSector => "F",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModeLabel {
    pub branch: Branch,
    pub k: usize,
}

impl ModeLabel {
    pub const fn new(branch: Branch, k: usize) -> Self {
        Self { branch, k }
    }
}

impl fmt::Display for ModeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.branch, self.k)
    }
}

/// `w_k = sqrt(a^2 - 4a(k+1) + 1)` and `wbar_k = sqrt(1 - 4a(k+1))`, principal
/// branches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchRoots {
    pub w: Complex64,
    pub wbar: Complex64,
}

pub fn branch_roots(params: &ModelParams, k: usize) -> Result<BranchRoots> {
    params.check_index(k)?;
    let a = params.a();
    let kk = k as f64 + 1.0;
    // +0.0 imaginary part puts the root of a negative radicand on +i
    let w = Complex64::new(a * a - 4.0 * a * kk + 1.0, 0.0).sqrt();
    let wbar = Complex64::new(1.0 - 4.0 * a * kk, 0.0).sqrt();
    Ok(BranchRoots { w, wbar })
}

pub fn eigenvalue(params: &ModelParams, label: ModeLabel) -> Result<Complex64> {
    let base = Complex64::new(-2.0 * label.k as f64 - 1.0, 0.0);
    match label.branch {
        Branch::Zero | Branch::FSector => Ok(base),
        Branch::Plus => Ok(base + branch_roots(params, label.k)?.wbar),
        Branch::Minus => Ok(base - branch_roots(params, label.k)?.wbar),
    }
}

/// Eigenmode of the coupled system: `E`, `D`, `H` as polynomials in `u`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeTriple {
    pub label: ModeLabel,
    pub lambda: Complex64,
    pub e: PolyU,
    pub d: PolyU,
    pub h: PolyU,
}

/// Shared lower parameters, second upper parameters and prefactors of the
/// three `2F2` components of a coupled mode.
struct Components {
    lower: [Complex64; 2],
    // (second upper parameter, prefactor, extra power of u/a) for E, D, H
    parts: [(Complex64, Complex64, usize); 3],
}

fn components(params: &ModelParams, label: ModeLabel) -> Result<Components> {
    let a = params.a();
    let sqrt_a = params.alpha();
    let one = Complex64::new(1.0, 0.0);
    let c = |x: f64| Complex64::new(x, 0.0);
    match label.branch {
        Branch::Zero => {
            let kk = label.k as f64 + 1.0;
            let w = Complex64::new(a * a - 4.0 * a * kk + 1.0, 0.0).sqrt();
            let base = c(1.0 - 0.5 * a);
            Ok(Components {
                lower: [base + w * 0.5, base - w * 0.5],
                parts: [
                    (c(0.5), one, 0),
                    (c(-0.5), c(-2.0 * a), 1),
                    (c(1.5), c(1.0 / sqrt_a), 0),
                ],
            })
        }
        Branch::Plus | Branch::Minus => {
            let s = label.branch.sign().unwrap_or(0.0);
            let sw = branch_roots(params, label.k)?.wbar * s;
            Ok(Components {
                lower: [one - sw * 0.5, c(1.0 - a) - sw],
                parts: [
                    (c(0.5) - sw * 0.5, one, 0),
                    (c(-0.5) - sw * 0.5, c(-2.0 * a) / (one + sw), 1),
                    (c(1.5) - sw * 0.5, (one - sw) / sqrt_a, 0),
                ],
            })
        }
        Branch::FSector => Err(Error::InvalidLabel(label)),
    }
}

fn with_mode(err: Error, label: ModeLabel, a: f64) -> Error {
    match err {
        Error::SingularLowerParameter {
            parameter, index, ..
        } => Error::SingularLowerParameter {
            parameter,
            index,
            mode: Some((label, a)),
        },
        other => other,
    }
}

/// Expands `prefactor * (u/a)^(k+extra) * sum_n t_n (-a/u)^n` into `PolyU`.
fn expand_inverted(t: &[Complex64], prefactor: Complex64, a: f64, k: usize, extra: usize) -> PolyU {
    let top = k + extra;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); top + 1];
    for (n, tn) in t.iter().enumerate().take(k + 1) {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        // (-a/u)^n (u/a)^top = (-1)^n a^(n - top) u^(top - n)
        coeffs[top - n] = prefactor * tn * sign * libm::pow(a, n as f64 - top as f64);
    }
    PolyU::new(coeffs)
}

pub fn build_mode(params: &ModelParams, label: ModeLabel) -> Result<ModeTriple> {
    let comp = components(params, label)?;
    let lambda = eigenvalue(params, label)?;
    let a = params.a();
    let k = label.k;
    let minus_k = Complex64::new(-(k as f64), 0.0);
    let mut polys = comp.parts.iter().map(|&(upper2, prefactor, extra)| {
        let spec = HyperSpec::new(vec![minus_k, upper2], comp.lower.to_vec(), k + 1)
            .with_eps(params.eps_param);
        let t = spec.series_coeffs().map_err(|e| with_mode(e, label, a))?;
        Ok(expand_inverted(&t, prefactor, a, k, extra))
    });
    let e = polys.next().unwrap_or(Ok(PolyU::zero()))?;
    let d = polys.next().unwrap_or(Ok(PolyU::zero()))?;
    let h = polys.next().unwrap_or(Ok(PolyU::zero()))?;
    Ok(ModeTriple {
        label,
        lambda,
        e,
        d,
        h,
    })
}

/// `F_k(u) = u^k`.
pub fn build_f_mode(k: usize) -> PolyU {
    PolyU::monomial(k, Complex64::new(1.0, 0.0))
}

/// Largest coefficient of `-2u F' - F - lambda F` for `F = u^k`, `lambda = -2k-1`.
pub fn f_mode_residual(k: usize) -> f64 {
    let f = build_f_mode(k);
    let lambda = Complex64::new(-2.0 * k as f64 - 1.0, 0.0);
    let two_u = PolyU::monomial(1, Complex64::new(-2.0, 0.0));
    let r = &(&(&two_u * &f.derivative()) - &f) - &f.scale(lambda);
    r.max_abs()
}

/// Maximum residual coefficient of the first-order eigenmode system, relative
/// to the largest coefficient of `E`, `D`, `H`.
pub fn verify_mode_system(mode: &ModeTriple, params: &ModelParams) -> f64 {
    let alpha = Complex64::new(params.alpha(), 0.0);
    let lambda = mode.lambda;
    let (e, d, h) = (&mode.e, &mode.d, &mode.h);
    let m2u = PolyU::monomial(1, Complex64::new(-2.0, 0.0));
    let one_minus_u = PolyU::from_real(&[1.0, -1.0]);
    let (de, dd, dh) = (e.derivative(), d.derivative(), h.derivative());

    let r_d = &(&(&m2u * &dd) + &(&m2u * e)) - &d.scale(lambda);
    let r_e = &(&(&m2u * &de) - &h.scale(alpha)) - &e.scale(lambda);
    let r_h = [
        &m2u * &dh,
        -h,
        dd.scale(alpha * 2.0),
        (&one_minus_u * &de).scale(alpha * -4.0),
        e.scale(alpha * 4.0),
        h.scale(-lambda),
    ]
    .iter()
    .fold(PolyU::zero(), |acc, p| &acc + p);

    let scale = e.max_abs().max(d.max_abs()).max(h.max_abs());
    if scale == 0.0 {
        return 0.0;
    }
    r_d.max_abs().max(r_e.max_abs()).max(r_h.max_abs()) / scale
}

/// Residual of the third-order equation satisfied by `E` alone.
///
/// Relative to the largest coefficient of the same expression built from
/// coefficient magnitudes, which bounds the attainable roundoff.
pub fn verify_third_order(mode: &ModeTriple, params: &ModelParams) -> f64 {
    let a = params.a();
    let l = mode.lambda;
    let la = l.norm();
    let c = |x: f64| Complex64::new(x, 0.0);
    let e = &mode.e;
    let e1 = e.derivative();
    let e2 = e1.derivative();
    let e3 = e2.derivative();
    let u3 = PolyU::monomial(3, c(8.0));
    let p2 = PolyU::new(vec![c(0.0), c(-8.0 * a), (l * 3.0 + 2.0 * a + 9.0) * 4.0]);
    let p1 = PolyU::new(vec![
        (l * 2.0 * a + 4.0 * a) * -2.0,
        (l * l * 3.0 + l * 2.0 * a + l * 12.0 + 10.0 * a + 12.0) * 2.0,
    ]);
    let p0 = l * l * l + l * l * 3.0 + l * 4.0 * a + l * 2.0 + 4.0 * a;
    let residual = [&u3 * &e3, &p2 * &e2, &p1 * &e1, e.scale(p0)]
        .iter()
        .fold(PolyU::zero(), |acc, p| &acc + p);

    let p2_abs = PolyU::from_real(&[0.0, 8.0 * a, 4.0 * (3.0 * la + 2.0 * a + 9.0)]);
    let p1_abs = PolyU::from_real(&[
        2.0 * (2.0 * a * la + 4.0 * a),
        2.0 * (3.0 * la * la + 2.0 * a * la + 12.0 * la + 10.0 * a + 12.0),
    ]);
    let p0_abs = la * la * la + 3.0 * la * la + 4.0 * a * la + 2.0 * la + 4.0 * a;
    let scale = [
        &u3 * &e3.abs(),
        &p2_abs * &e2.abs(),
        &p1_abs * &e1.abs(),
        e.abs().scale(c(p0_abs)),
    ]
    .iter()
    .fold(PolyU::zero(), |acc, p| &acc + p)
    .max_abs();
    if scale == 0.0 {
        0.0
    } else {
        residual.max_abs() / scale
    }
}

/// Value of the `3F1(...; u/a)` form of `E`, normalised to 1 at `u = 0`.
///
/// Reversing the order of the terminating sum relates it to the `2F2(...; -a/u)`
/// form: `E(u) = E(0) * 3F1(u/a)`. For the `+/-` branches the third upper
/// parameter is `-k + a +/- wbar_k`, which is what the recursion for the series
/// coefficients produces with `lambda = -2k-1 +/- wbar_k`.
pub fn e_series_in_u(params: &ModelParams, label: ModeLabel, u: Complex64) -> Result<Complex64> {
    let a = params.a();
    let k = label.k as f64;
    let c = |x: f64| Complex64::new(x, 0.0);
    let (upper, lower) = match label.branch {
        Branch::Zero => {
            let kk = k + 1.0;
            let w = Complex64::new(a * a - 4.0 * a * kk + 1.0, 0.0).sqrt();
            (
                vec![c(-k), c(-k + 0.5 * a) + w * 0.5, c(-k + 0.5 * a) - w * 0.5],
                vec![c(-k + 0.5)],
            )
        }
        Branch::Plus | Branch::Minus => {
            let s = label.branch.sign().unwrap_or(0.0);
            let sw = branch_roots(params, label.k)?.wbar * s;
            (
                vec![c(-k), c(-k) + sw * 0.5, c(-k + a) + sw],
                vec![c(-k + 0.5) + sw * 0.5],
            )
        }
        Branch::FSector => return Err(Error::InvalidLabel(label)),
    };
    HyperSpec::new(upper, lower, label.k + 1)
        .with_eps(params.eps_param)
        .eval_terminating(u / a)
        .map_err(|e| with_mode(e, label, a))
}

/// Largest relative deviation between the `PolyU` form of `E` and its
/// `3F1(u/a)` form over the sample points.
pub fn representation_deviation(
    params: &ModelParams,
    mode: &ModeTriple,
    points: &[f64],
) -> Result<f64> {
    let e0 = mode.e.coeff(0);
    let mut worst: f64 = 0.0;
    for &u in points {
        let u = Complex64::new(u, 0.0);
        let lhs = mode.e.eval(u);
        let rhs = e0 * e_series_in_u(params, mode.label, u)?;
        // absolute-value sum of the polynomial terms sets the attainable precision
        let scale = mode
            .e
            .coeffs()
            .iter()
            .enumerate()
            .map(|(m, c)| c.norm() * libm::pow(u.re, m as f64))
            .sum::<f64>();
        worst = worst.max((lhs - rhs).norm() / scale.max(f64::MIN_POSITIVE));
    }
    Ok(worst)
}

/// Largest coefficient magnitude over the three components.
pub fn mode_scale(mode: &ModeTriple) -> f64 {
    max_abs(mode.e.coeffs())
        .max(max_abs(mode.d.coeffs()))
        .max(max_abs(mode.h.coeffs()))
}
