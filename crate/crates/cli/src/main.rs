use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qaoa_landscape::Error;

mod commands;

#[derive(Parser)]
#[command(
    name = "qaoa-landscape",
    version,
    about = "Depth-1 QAOA cost and Fourier landscapes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Grid-scan C(β, γ) and write the scan file.
    Scan(ScanArgs),
    /// Scan, transform and list spectral peaks.
    Spectrum(SpectrumArgs),
    /// Total variation and Fourier metrics of one landscape.
    Roughness(RoughnessArgs),
    /// Roughness along the term-by-term interpolation sequence.
    Interpolate(InterpolateArgs),
    /// Roughness of weighted random 3-regular MaxCut instances per size.
    Concentration(ConcentrationArgs),
    /// Multistart local optimization benchmark.
    Optbench(OptbenchArgs),
}

#[derive(Args, Clone)]
struct LandscapeArgs {
    /// Hamiltonian JSON file or builtin name (H1, H2, H6..H9, toy:a,b,c, klocal:k, interp:j, zero:n).
    #[arg(long)]
    hamiltonian: String,
    /// auto, closed or statevector.
    #[arg(long, default_value = "auto")]
    evaluator: String,
    /// Resolution per axis: `N` or `N_gamma,N_beta`.
    #[arg(long, default_value = "201")]
    res: String,
    /// `auto` or `gamma,beta` extents in radians.
    #[arg(long, default_value = "auto")]
    extent: String,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    landscape: LandscapeArgs,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a plain PGM heatmap.
    #[arg(long)]
    heatmap: Option<PathBuf>,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    landscape: LandscapeArgs,
    /// Half-spectrum output file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Relative peak threshold.
    #[arg(long, default_value_t = 1e-6)]
    threshold: f64,
}

#[derive(Args, Clone)]
struct TvArgs {
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    directions: usize,
    #[arg(long, default_value_t = 200)]
    steps: usize,
    /// one_period or slower_axis.
    #[arg(long, default_value = "one_period")]
    span: String,
}

#[derive(Args)]
struct RoughnessArgs {
    #[command(flatten)]
    landscape: LandscapeArgs,
    #[command(flatten)]
    tv: TvArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InterpolateArgs {
    #[command(flatten)]
    tv: TvArgs,
    #[arg(long, default_value = "auto")]
    evaluator: String,
    #[arg(long, default_value = "201")]
    res: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConcentrationArgs {
    #[command(flatten)]
    tv: TvArgs,
    /// Comma-separated graph sizes.
    #[arg(long, default_value = "8,12,16,20")]
    sizes: String,
    /// Graphs per size.
    #[arg(long, default_value_t = 5)]
    n_seeds: usize,
    /// Edge weight range `low,high`.
    #[arg(long, default_value = "-10,10", allow_hyphen_values = true)]
    weights: String,
    #[arg(long, default_value = "201")]
    res: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OptbenchArgs {
    #[arg(long)]
    hamiltonian: String,
    #[arg(long, default_value = "auto")]
    evaluator: String,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    runs: usize,
    #[arg(long, default_value_t = 500)]
    max_iters: usize,
    /// Histogram bin width; default (max - min)/50.
    #[arg(long)]
    bin_width: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure category reported through the exit status.
#[derive(Debug)]
enum Failure {
    Config(String),
    Numeric(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::IncommensurateCoefficients(..)
            | Error::EnumerationLimit { .. }
            | Error::RetryLimit(_) => Failure::Numeric(e.to_string()),
            _ => Failure::Config(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Scan(a) => commands::scan(a),
        Command::Spectrum(a) => commands::spectrum(a),
        Command::Roughness(a) => commands::roughness(a),
        Command::Interpolate(a) => commands::interpolate(a),
        Command::Concentration(a) => commands::concentration(a),
        Command::Optbench(a) => commands::optbench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
