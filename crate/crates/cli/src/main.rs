use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use irs_squint_cli::{run, Command, Format, RunOptions};

/// Beam squint in wideband THz IRS links: designs, sweeps and heatmaps.
#[derive(Parser)]
#[command(name = "irs-squint", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Per-element phases (rad) and delays (s) of the scenario's design
    Design(Common),
    /// Normalized far-field gain over the direction grid at selected subcarriers
    FarAngleSweep(Common),
    /// Normalized far-field gain at nu0 on every subcarrier
    FarSubcarrierSweep(Common),
    /// Normalized near-field gain at the user on every subcarrier
    NearSubcarrierSweep(Common),
    /// Normalized near-field gain over a location grid around the user
    NearHeatmap(Common),
    /// Summary metrics of the per-subcarrier gain
    Metrics(Common),
    /// Array aperture and Fraunhofer distance
    Fraunhofer(Common),
}

#[derive(Args)]
struct Common {
    /// Scenario file (JSON)
    #[arg(long)]
    scenario: PathBuf,
    /// Output file
    #[arg(long)]
    out: PathBuf,
    /// Output format; defaults to the scenario's `format`
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Gain threshold for metrics, in (0, 1)
    #[arg(long)]
    threshold: Option<f64>,
    /// Grid step of the direction or location sweep
    #[arg(long)]
    grid_step: Option<f64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = match cli.command {
        Sub::Design(a) => (Command::Design, a),
        Sub::FarAngleSweep(a) => (Command::FarAngleSweep, a),
        Sub::FarSubcarrierSweep(a) => (Command::FarSubcarrierSweep, a),
        Sub::NearSubcarrierSweep(a) => (Command::NearSubcarrierSweep, a),
        Sub::NearHeatmap(a) => (Command::NearHeatmap, a),
        Sub::Metrics(a) => (Command::Metrics, a),
        Sub::Fraunhofer(a) => (Command::Fraunhofer, a),
    };
    let options = RunOptions {
        format: args.format,
        threshold: args.threshold,
        grid_step: args.grid_step,
    };
    match run(command, &args.scenario, &args.out, &options) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("irs-squint {}: {e}", command.name());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
