use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use jcmodes::{
    cmd_compare, cmd_evolve, cmd_verify, print_report, InitSource, RunConfig, COMPARE_TOLERANCE,
};
use jcmodes_core::oracle::DEFAULT_STEP;

/// Exact eigenmode evolution of the damped Jaynes-Cummings model.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write state.csv, moments.csv and generating.csv.
    Evolve(RunArgs),
    /// Check orthonormality and residuals of modes and adjoints.
    Verify {
        #[arg(long, default_value_t = 5.0)]
        a: f64,
        #[arg(long, default_value_t = 10)]
        k_max: usize,
        /// Relative perturbation applied to every adjoint constant c''.
        #[arg(long, hide = true)]
        perturb_constant: Option<f64>,
    },
    /// Compare the spectral solution against RK4 on a truncated ladder.
    Compare {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value_t = 60)]
        n_trunc: usize,
        #[arg(long, default_value_t = DEFAULT_STEP)]
        step: f64,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = 5.0)]
    a: f64,
    /// Photon number of the initial Fock state (atom in the ground state).
    #[arg(long, conflicts_with = "init_file")]
    n0: Option<usize>,
    /// TOML file with arrays g, e and optional coh = [[re, im], ...].
    #[arg(long)]
    init_file: Option<PathBuf>,
    #[arg(long, default_value_t = 3.0)]
    tau_max: f64,
    #[arg(long, default_value_t = 60)]
    tau_steps: usize,
    #[arg(long, default_value_t = 20)]
    u_steps: usize,
    #[arg(long, default_value_t = 20)]
    n_max: usize,
    #[arg(long, default_value_t = 2)]
    m_max: usize,
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

impl RunArgs {
    fn config(self) -> RunConfig {
        let init = match self.init_file {
            Some(path) => InitSource::File(path),
            None => InitSource::FockGround(self.n0.unwrap_or(6)),
        };
        RunConfig {
            a: self.a,
            init,
            tau_max: self.tau_max,
            tau_steps: self.tau_steps,
            u_steps: self.u_steps,
            n_max: self.n_max,
            m_max: self.m_max,
            out_dir: self.out,
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Evolve(args) => {
            let cfg = args.config();
            cmd_evolve(&cfg)?;
            println!(
                "wrote state.csv, moments.csv, generating.csv to {}",
                cfg.out_dir.display()
            );
            Ok(true)
        }
        Command::Verify {
            a,
            k_max,
            perturb_constant,
        } => {
            let report = cmd_verify(a, k_max, perturb_constant)?;
            print_report(&report);
            Ok(report.passed())
        }
        Command::Compare { run, n_trunc, step } => {
            let dev = cmd_compare(&run.config(), n_trunc, step)?;
            let ok = dev <= COMPARE_TOLERANCE;
            println!(
                "max deviation {dev:.3e} (tol {COMPARE_TOLERANCE:e}): {}",
                if ok { "ok" } else { "FAIL" }
            );
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
