//! Initial states, their generating functions, and the spectral coefficients
//! fitted to them through the adjoint pairings.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::adjoint::{build_adjoint, build_f_adjoint, pair_components, pair_f, pairing_order};
use crate::error::{Error, Result};
use crate::hyper::HyperSpec;
use crate::modes::{branch_roots, build_mode, Branch, ModeLabel, ModeTriple};
use crate::params::ModelParams;
use crate::poly::{binomial, LaurentX, PolyU};

/// Tolerance on `sum_n (g_n + e_n) = 1` at ingestion.
pub const TRACE_TOLERANCE: f64 = 1e-12;

/// Diagonal-sector initial state.
///
/// `coh[n]` is the coherence `<e,n|rho|g,n+1>`. The derived sequences follow
/// `d_0 = g_0`, `d_n = g_n + e_{n-1}`, `f_n = 2 sqrt(n+1) Re coh_n` and
/// `h_n = 2 sqrt(n+1) Im coh_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct InitialState {
    pub n_support: usize,
    pub g: Vec<f64>,
    pub e: Vec<f64>,
    pub coh: Vec<Complex64>,
    pub d: Vec<f64>,
    pub f: Vec<f64>,
    pub h: Vec<f64>,
}

pub fn ingest(g: &[f64], e: &[f64], coh: &[Complex64]) -> Result<InitialState> {
    if g.len() != e.len() || g.len() != coh.len() || g.is_empty() {
        return Err(Error::LengthMismatch {
            g: g.len(),
            e: e.len(),
            coh: coh.len(),
        });
    }
    for (which, seq) in [('g', g), ('e', e)] {
        if let Some((index, &value)) = seq
            .iter()
            .enumerate()
            .find(|(_, v)| !(**v >= 0.0 && **v <= 1.0))
        {
            return Err(Error::NegativePopulation {
                which,
                index,
                value,
            });
        }
    }
    if coh.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
        return Err(Error::InvalidParameter("coherences must be finite"));
    }
    let trace: f64 = g.iter().chain(e).sum();
    if libm::fabs(trace - 1.0) > TRACE_TOLERANCE {
        return Err(Error::TraceNotNormalized { trace });
    }

    let zero = Complex64::new(0.0, 0.0);
    let n_support = (0..g.len())
        .rev()
        .find(|&n| g[n] != 0.0 || e[n] != 0.0 || coh[n] != zero)
        .unwrap_or(0);
    let len = n_support + 1;
    let g = g[..len].to_vec();
    let e = e[..len].to_vec();
    let coh = coh[..len].to_vec();

    let mut d = vec![0.0; len + 1];
    d[..len].copy_from_slice(&g);
    for n in 0..len {
        d[n + 1] += e[n];
    }
    let weight = |n: usize| 2.0 * libm::sqrt(n as f64 + 1.0);
    let f = coh
        .iter()
        .enumerate()
        .map(|(n, c)| weight(n) * c.re)
        .collect();
    let h = coh
        .iter()
        .enumerate()
        .map(|(n, c)| weight(n) * c.im)
        .collect();
    Ok(InitialState {
        n_support,
        g,
        e,
        coh,
        d,
        f,
        h,
    })
}

impl InitialState {
    /// Atom in its ground state with `n0` photons.
    pub fn fock_ground(n0: usize) -> Self {
        let mut g = vec![0.0; n0 + 1];
        g[n0] = 1.0;
        let zeros = vec![0.0; n0 + 1];
        let coh = vec![Complex64::new(0.0, 0.0); n0 + 1];
        ingest(&g, &zeros, &coh).expect("a single unit population is a valid state")
    }

    pub fn d_poly(&self) -> PolyU {
        PolyU::from_real_z_coeffs(&self.d)
    }

    pub fn e_poly(&self) -> PolyU {
        PolyU::from_real_z_coeffs(&self.e)
    }

    pub fn h_poly(&self) -> PolyU {
        PolyU::from_real_z_coeffs(&self.h)
    }

    pub fn f_poly(&self) -> PolyU {
        PolyU::from_real_z_coeffs(&self.f)
    }
}

/// Generating functions of an initial state in `x = a / u`. All exact.
#[derive(Debug, Clone, PartialEq)]
pub struct InitialGenerating {
    pub d: LaurentX,
    pub e: LaurentX,
    pub h: LaurentX,
    pub f: LaurentX,
}

pub fn initial_generating(state: &InitialState, params: &ModelParams) -> InitialGenerating {
    let a = params.a();
    InitialGenerating {
        d: state.d_poly().to_laurent_x(a),
        e: state.e_poly().to_laurent_x(a),
        h: state.h_poly().to_laurent_x(a),
        f: state.f_poly().to_laurent_x(a),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralEntry {
    pub amplitude: Complex64,
    pub mode: ModeTriple,
}

/// Eigenmode expansion fitted to an initial state.
///
/// `entries` covers the three coupled branches for `k <= n_support`,
/// `f_entries` the F-sector. `d_constant` is the constant added to `D` so
/// that `D(u = 0) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub params: ModelParams,
    pub n_support: usize,
    pub entries: BTreeMap<ModeLabel, SpectralEntry>,
    pub f_entries: BTreeMap<usize, Complex64>,
    pub d_constant: f64,
}

pub fn project(params: &ModelParams, state: &InitialState) -> Result<SpectralDecomposition> {
    let n_s = state.n_support;
    for k in 0..=n_s {
        params.check_index(k)?;
    }
    let (e0, d0, h0, f0) = (
        state.e_poly(),
        state.d_poly(),
        state.h_poly(),
        state.f_poly(),
    );

    let mut entries = BTreeMap::new();
    for k in 0..=n_s {
        for branch in Branch::COUPLED {
            let label = ModeLabel::new(branch, k);
            let adj = build_adjoint(params, label, pairing_order(n_s, k))?;
            let amplitude = pair_components(&adj, &e0, &d0, &h0, params)?;
            let mode = build_mode(params, label)?;
            entries.insert(label, SpectralEntry { amplitude, mode });
        }
    }

    // first excluded index: the residue integrand is analytic there
    if params.check_index(n_s + 1).is_ok() {
        for branch in Branch::COUPLED {
            let adj = build_adjoint(params, ModeLabel::new(branch, n_s + 1), 2)?;
            let beyond = pair_components(&adj, &e0, &d0, &h0, params)?;
            debug_assert!(
                beyond.norm() < 1e-12,
                "coefficient beyond support: {beyond}"
            );
        }
    }

    let f_entries = (0..=n_s)
        .map(|k| Ok((k, pair_f(&build_f_adjoint(params, k), &f0, params)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;

    Ok(SpectralDecomposition {
        params: *params,
        n_support: n_s,
        entries,
        f_entries,
        d_constant: 1.0,
    })
}

/// Closed-form coefficients for the atom in its ground state with `n0`
/// photons, for `k = 0 .. n0 - 1` on all three branches.
pub fn fock_ground_coefficients(
    params: &ModelParams,
    n0: usize,
) -> Result<BTreeMap<ModeLabel, Complex64>> {
    let a = params.a();
    let c = |x: f64| Complex64::new(x, 0.0);
    let mut out = BTreeMap::new();
    for k in 0..n0 {
        let constants = |b| crate::adjoint::adjoint_constants(params, ModeLabel::new(b, k));
        let roots = branch_roots(params, k)?;
        let lead = libm::pow(-a, k as f64 + 1.0) * binomial(n0, k + 1);
        let first = c(-(n0 as f64) + k as f64 + 1.0);
        for branch in Branch::COUPLED {
            let (upper2, lower) = match branch {
                Branch::Zero => (
                    c(0.5),
                    vec![
                        c(0.5 * a + 1.0) + roots.w * 0.5,
                        c(0.5 * a + 1.0) - roots.w * 0.5,
                    ],
                ),
                _ => {
                    let sw = roots.wbar * branch.sign().unwrap_or(0.0);
                    (c(0.5) + sw * 0.5, vec![c(1.0) + sw * 0.5, c(1.0 + a) + sw])
                }
            };
            let series = HyperSpec::new(vec![first, upper2], lower, 0)
                .with_eps(params.eps_param)
                .eval_terminating(c(a))?;
            let amplitude = constants(branch)?.c_prime * lead * series;
            out.insert(ModeLabel::new(branch, k), amplitude);
        }
    }
    Ok(out)
}
