use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use casimir_cli::{run, RunOptions};

/// Casimir energies and attraction checks for voxelized bodies.
///
/// Units are natural (ħ = c = 1): lengths in an arbitrary unit L, energies
/// and frequencies in 1/L.
#[derive(Debug, Parser)]
#[command(name = "casimir", version)]
struct Args {
    /// Scenario file (TOML).
    #[arg(required_unless_present = "preset", conflicts_with = "preset")]
    config: Option<PathBuf>,

    /// Run a built-in scenario instead of a file.
    #[arg(long)]
    preset: Option<String>,

    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,

    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,

    /// Accepted for explicitness; reductions are always ordered, so output
    /// is bitwise identical across runs and thread counts.
    #[arg(long)]
    deterministic: bool,

    /// Only run the fixed-frequency theorem checks.
    #[arg(long)]
    check_only: bool,

    /// Also write spectrum.csv.
    #[arg(long)]
    spectrum: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let opts = RunOptions {
        config: args.config,
        preset: args.preset,
        out: args.out,
        threads: args.threads,
        check_only: args.check_only,
        spectrum: args.spectrum,
    };
    let _ = args.deterministic;
    match run(&opts) {
        Ok(summary) => {
            eprintln!("{}", summary.describe());
            if summary.ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
