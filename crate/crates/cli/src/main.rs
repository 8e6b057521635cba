//! `gravhelm`: fundamental-solution grids, the interior Airy convergence
//! study, and point-source scattering sweeps.

mod commands;
mod config;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::SolveOpts;
use config::{RunConfig, Solver};
use error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "gravhelm",
    version,
    about = "Gravity Helmholtz fundamental solution and scattering experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Flat TOML file of run parameters
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for CSV files
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Contour node-spacing scale
    #[arg(long, global = true)]
    h0: Option<f64>,
    /// Contour truncation threshold
    #[arg(long, global = true)]
    eps: Option<f64>,
    #[arg(long, global = true, value_enum)]
    solver: Option<Solver>,
    /// Relative residual tolerance for GMRES
    #[arg(long = "gmres-tol", global = true)]
    gmres_tol: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the fundamental solution on a grid
    EvalFs,
    /// Interior Dirichlet problem with a known Airy-function solution
    InteriorAiry,
    /// Scattering of a point source by a star-shaped obstacle
    Scatter,
}

fn run(cli: Cli) -> Result<String, CliError> {
    if let Some(k) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    }
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    cfg.h0 = cli.h0.or(cfg.h0);
    cfg.eps = cli.eps.or(cfg.eps);
    cfg.solver = cli.solver.or(cfg.solver);
    cfg.gmres_tol = cli.gmres_tol.or(cfg.gmres_tol);
    let fs = cfg.fs()?;
    let opts = SolveOpts {
        solver: cfg.solver.unwrap_or(Solver::Dense),
        gmres_tol: cfg.gmres_tol.unwrap_or(1e-12),
    };
    std::fs::create_dir_all(&cli.out).map_err(|source| CliError::Io {
        path: cli.out.clone(),
        source,
    })?;
    match cli.command {
        Command::EvalFs => commands::eval_fs(&cfg, &fs, &cli.out),
        Command::InteriorAiry => commands::interior_airy(&cfg, &fs, opts, &cli.out),
        Command::Scatter => commands::scatter(&cfg, &fs, opts, &cli.out),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(summary) => {
            println!("{summary}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
