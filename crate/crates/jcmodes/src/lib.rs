//! Run configuration, initial-state files, and the three CLI commands
//! (`evolve`, `verify`, `compare`) on top of `jcmodes-core`.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use jcmodes_core::checks::{run_verification, VerifyReport};
use jcmodes_core::evolve::{generating_at, moments_at, state_at, FactorialMoments, GeneratingSet};
use jcmodes_core::oracle::{integrate, max_deviation};
use jcmodes_core::projection::{ingest, project};
use jcmodes_core::{Complex64, InitialState, ModelParams, SpectralDecomposition, StateSlice};
use rayon::prelude::*;
use serde::Deserialize;

/// Largest spectral/oracle deviation accepted by `compare`.
pub const COMPARE_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub enum InitSource {
    FockGround(usize),
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub a: f64,
    pub init: InitSource,
    pub tau_max: f64,
    pub tau_steps: usize,
    pub u_steps: usize,
    pub n_max: usize,
    pub m_max: usize,
    pub out_dir: PathBuf,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        ensure!(
            self.a.is_finite() && self.a > 0.0,
            "a must be positive, got {}",
            self.a
        );
        ensure!(
            self.tau_max.is_finite() && self.tau_max > 0.0,
            "tau-max must be positive, got {}",
            self.tau_max
        );
        ensure!(self.tau_steps >= 1, "tau-steps must be at least 1");
        ensure!(self.u_steps >= 1, "u-steps must be at least 1");
        Ok(())
    }

    pub fn params(&self) -> Result<ModelParams> {
        Ok(ModelParams::new(self.a)?)
    }

    pub fn initial_state(&self) -> Result<InitialState> {
        match &self.init {
            InitSource::FockGround(n0) => Ok(InitialState::fock_ground(*n0)),
            InitSource::File(path) => load_state(path),
        }
    }

    /// `tau_steps + 1` equally spaced times from 0 to `tau_max`.
    pub fn tau_grid(&self) -> Vec<f64> {
        grid(self.tau_max, self.tau_steps)
    }

    /// `u_steps + 1` equally spaced points on `[0, 1]`.
    pub fn u_grid(&self) -> Vec<f64> {
        grid(1.0, self.u_steps)
    }
}

fn grid(end: f64, steps: usize) -> Vec<f64> {
    (0..=steps).map(|i| end * i as f64 / steps as f64).collect()
}

/// On-disk initial state: populations `g`, `e`, and coherences
/// `coh[n] = <e,n|rho|g,n+1>` as `[re, im]` pairs.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub g: Vec<f64>,
    pub e: Vec<f64>,
    #[serde(default)]
    pub coh: Option<Vec<[f64; 2]>>,
    #[serde(default)]
    pub metadata: Option<toml::Table>,
}

impl StateFile {
    pub fn into_state(self) -> Result<InitialState> {
        let coh: Vec<Complex64> = match self.coh {
            Some(pairs) => pairs
                .iter()
                .map(|[re, im]| Complex64::new(*re, *im))
                .collect(),
            None => vec![Complex64::new(0.0, 0.0); self.g.len()],
        };
        Ok(ingest(&self.g, &self.e, &coh)?)
    }
}

pub fn parse_state(text: &str) -> Result<InitialState> {
    let file: StateFile = toml::from_str(text)?;
    file.into_state()
}

pub fn load_state(path: &Path) -> Result<InitialState> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_state(&text).with_context(|| format!("parsing {}", path.display()))
}

/// 17 significant digits; negative zero is written as zero.
fn fmt(x: f64) -> String {
    format!("{:.16e}", x + 0.0)
}

/// Everything `evolve` writes for one time.
struct Frame {
    tau: f64,
    state: StateSlice,
    moments: FactorialMoments,
    set: GeneratingSet,
}

fn frame(decomp: &SpectralDecomposition, tau: f64, cfg: &RunConfig) -> jcmodes_core::Result<Frame> {
    Ok(Frame {
        tau,
        state: state_at(decomp, tau, cfg.n_max)?,
        moments: moments_at(decomp, tau, cfg.m_max)?,
        set: generating_at(decomp, tau)?,
    })
}

fn write_csv(path: &Path, header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> Result<()> {
    let mut w =
        csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes `state.csv`, `moments.csv` and `generating.csv` into the output
/// directory. Times are evaluated in parallel; files are written in grid order.
pub fn cmd_evolve(cfg: &RunConfig) -> Result<()> {
    cfg.validate()?;
    let params = cfg.params()?;
    let decomp = project(&params, &cfg.initial_state()?)?;
    let frames = cfg
        .tau_grid()
        .into_par_iter()
        .map(|tau| frame(&decomp, tau, cfg))
        .collect::<jcmodes_core::Result<Vec<_>>>()?;

    fs::create_dir_all(&cfg.out_dir)
        .with_context(|| format!("creating {}", cfg.out_dir.display()))?;
    write_csv(
        &cfg.out_dir.join("state.csv"),
        &["tau", "n", "e_n", "g_n", "h_n", "f_n", "d_n"],
        frames.iter().flat_map(|fr| {
            let s = &fr.state;
            (0..=cfg.n_max).map(move |n| {
                vec![
                    fmt(fr.tau),
                    n.to_string(),
                    fmt(s.e[n]),
                    fmt(s.g[n]),
                    fmt(s.h[n]),
                    fmt(s.f[n]),
                    fmt(s.d[n]),
                ]
            })
        }),
    )?;
    write_csv(
        &cfg.out_dir.join("moments.csv"),
        &["tau", "m", "e_bar", "g_bar"],
        frames.iter().flat_map(|fr| {
            let m = &fr.moments;
            (0..=cfg.m_max)
                .map(move |i| vec![fmt(fr.tau), i.to_string(), fmt(m.e_bar[i]), fmt(m.g_bar[i])])
        }),
    )?;
    let us = cfg.u_grid();
    write_csv(
        &cfg.out_dir.join("generating.csv"),
        &["tau", "u", "E", "G", "D", "H", "F"],
        frames.iter().flat_map(|fr| {
            let set = &fr.set;
            us.iter().map(move |&u| {
                let at = |p: &jcmodes_core::PolyU| fmt(p.eval(Complex64::new(u, 0.0)).re);
                vec![
                    fmt(fr.tau),
                    fmt(u),
                    at(&set.e),
                    at(&set.g),
                    at(&set.d),
                    at(&set.h),
                    at(&set.f),
                ]
            })
        }),
    )?;
    Ok(())
}

/// Runs the verification suite; `perturb` scales every adjoint `c''` by
/// `1 + perturb` first.
pub fn cmd_verify(a: f64, k_max: usize, perturb: Option<f64>) -> Result<VerifyReport> {
    let params = ModelParams::new(a)?;
    Ok(run_verification(&params, k_max, perturb)?)
}

pub fn print_report(report: &VerifyReport) {
    println!("a = {}, k_max = {}", report.a, report.k_max);
    for (name, value, tol) in report.checks() {
        let tag = if value.is_finite() && value <= tol {
            "ok  "
        } else {
            "FAIL"
        };
        println!("{tag} {name:<30} {value:.3e} (tol {tol:e})");
    }
}

/// Maximum deviation between the spectral solution and the RK4 ladder over
/// the configured time grid and `n <= n_max`.
pub fn cmd_compare(cfg: &RunConfig, n_trunc: usize, step: f64) -> Result<f64> {
    cfg.validate()?;
    let params = cfg.params()?;
    let state = cfg.initial_state()?;
    let taus = cfg.tau_grid();
    let ladder = integrate(&state, &params, &taus, n_trunc, step)?;
    if cfg.n_max > n_trunc {
        bail!("n-max ({}) exceeds n-trunc ({n_trunc})", cfg.n_max);
    }
    let ladder: Vec<StateSlice> = ladder.into_iter().map(|s| s.truncated(cfg.n_max)).collect();
    let decomp = project(&params, &state)?;
    let spectral = taus
        .par_iter()
        .map(|&tau| state_at(&decomp, tau, cfg.n_max))
        .collect::<jcmodes_core::Result<Vec<_>>>()?;
    Ok(max_deviation(&spectral, &ladder)?)
}
