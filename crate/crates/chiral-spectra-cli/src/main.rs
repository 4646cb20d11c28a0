//! Command-line front end for the chiral-spectra library.
//!
//! Exit codes are stable: 0 means the requested computation ran and every
//! verification it implies passed, 1 means the computation ran but a
//! verification failed (spectrum mismatch, violated bound, failed identity),
//! and 2 means the input was rejected (bad flags, malformed graph, parameter
//! outside the supported regime, dimension caps).

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

mod commands;
mod common;

#[derive(Parser)]
#[command(
    name = "chiral-spectra",
    version,
    about = "Spectral analysis of chiral-symmetric quantum walks",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a walk model, predict its spectrum, and verify the prediction
    /// against a direct eigensolve together with the spectral bounds.
    Spectrum(SpectrumArgs),
    /// Compute the Ihara zeta reciprocal of a graph two independent ways and
    /// cross-check walk counts and the Euler product.
    Zeta(ZetaArgs),
    /// Evaluate the split-step momentum model: closed-form spectral set,
    /// regime thresholds, and sampled eigenvalue containment.
    Mko(MkoArgs),
    /// Sweep a model parameter and report per-point spectra and verdicts.
    Sweep(SweepArgs),
    /// Run the full self-verification suite.
    Verify(VerifyArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Path to an edge-list file (whitespace-separated vertex pairs, `#` comments)
    #[arg(long, value_name = "PATH", conflicts_with = "builtin")]
    graph: Option<PathBuf>,
    /// Built-in graph: k4, k5, k33, petersen, or cN for an N-cycle
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
    /// Walk model: grover, correlated, hom-example, inhom-example
    #[arg(long, value_name = "NAME")]
    model: String,
    /// Transmission probability (correlated model) or shift weight (hom-example)
    #[arg(long)]
    p: Option<f64>,
    /// Coin eigenvalue a (hom-example) or shift amplitude alpha (inhom-example)
    #[arg(long)]
    a: Option<f64>,
    /// Coin eigenvalue b (hom-example) or shift magnitude |beta| (inhom-example)
    #[arg(long)]
    b: Option<f64>,
    /// Spinor angle for the hom-example internal state
    #[arg(long)]
    theta1: Option<f64>,
    /// Phase of beta for the inhom-example shift
    #[arg(long)]
    theta2: Option<f64>,
    /// Phase of the hopping amplitude q (hom-example)
    #[arg(long)]
    phi: Option<f64>,
    /// Number of ring sites for the two example models (default 8)
    #[arg(long, value_name = "INT")]
    grid: Option<usize>,
    /// Matching tolerance (overrides CHIRAL_SPECTRA_TOL; default 1e-8)
    #[arg(long)]
    tol: Option<f64>,
    /// Write the report here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct ZetaArgs {
    #[arg(long, value_name = "PATH", conflicts_with = "builtin")]
    graph: Option<PathBuf>,
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
    /// Maximum cycle length for the walk-count table and Euler product
    #[arg(long = "L", value_name = "INT")]
    l: Option<usize>,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct MkoArgs {
    /// Gain/loss strength (must be nonnegative)
    #[arg(long, default_value_t = 0.0)]
    gamma: f64,
    /// Coin phase
    #[arg(long, default_value_t = 0.0)]
    phi: f64,
    /// First coin angle (sin(theta1)sin(theta2) must be positive)
    #[arg(long)]
    theta1: f64,
    /// Second coin angle
    #[arg(long)]
    theta2: f64,
    /// Number of momentum samples (minimum 64)
    #[arg(long, value_name = "INT", default_value_t = 256)]
    grid: usize,
    /// Containment tolerance (overrides CHIRAL_SPECTRA_TOL; default 1e-6)
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct SweepArgs {
    /// Swept model: correlated (over p) or mko (over gamma)
    #[arg(long, value_name = "NAME")]
    model: String,
    #[arg(long, value_name = "PATH", conflicts_with = "builtin")]
    graph: Option<PathBuf>,
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
    /// Sweep grid as START:STOP:COUNT (defaults: 0:1:21 for correlated, 0:2:11 for mko)
    #[arg(long, value_name = "SPEC")]
    range: Option<String>,
    /// Momentum samples per mko sweep point (default 128)
    #[arg(long, value_name = "INT")]
    grid: Option<usize>,
    #[arg(long)]
    theta1: Option<f64>,
    #[arg(long)]
    theta2: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    phi: f64,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Seed for all randomized checks
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Number of random pairs exercised by the statistical checks
    #[arg(long, default_value_t = 100)]
    random_pairs: usize,
    /// Matching tolerance (overrides CHIRAL_SPECTRA_TOL; default 1e-8)
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Spectrum(args) => commands::run_spectrum(args),
        Command::Zeta(args) => commands::run_zeta(args),
        Command::Mko(args) => commands::run_mko(args),
        Command::Sweep(args) => commands::run_sweep(args),
        Command::Verify(args) => commands::run_verify(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(common::EXIT_INPUT)
        }
    }
}
