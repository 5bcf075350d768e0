use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dualcavity::commands;
use dualcavity::config;
use dualcavity::manifest::RunManifest;
use dualcavity::tolerances;
use dualcavity::verify;
use dualcavity::CliError;

/// Dual-symmetric cavity field toolbox: classical mode evolution,
/// truncated Fock-space quantization, gauge currents, and charge
/// observables, with a machine-checkable verification suite.
#[derive(Parser)]
#[command(name = "dualcavity", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve the classical field and emit field/energy traces.
    ClassicalEvolve(RunArgs),
    /// Build the quantized operators and emit dumps plus the spectrum.
    Quantize(RunArgs),
    /// Evaluate the gauge currents over the grid.
    Currents(RunArgs),
    /// Emit the charge-quantum report.
    ChargeReport(RunArgs),
    /// Run every invariant check and emit the verification report.
    Verify(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Path to the JSON configuration document.
    #[arg(long)]
    config: PathBuf,
    /// Output directory; created if absent.
    #[arg(long)]
    out: PathBuf,
    /// Seed for the randomized verification trials.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Tolerance override `name=value`; repeatable.
    #[arg(long = "tol", value_name = "NAME=VALUE")]
    tol: Vec<String>,
}

fn run(cli: Cli) -> dualcavity::Result<()> {
    let (name, args) = match &cli.command {
        Command::ClassicalEvolve(a) => ("classical-evolve", a),
        Command::Quantize(a) => ("quantize", a),
        Command::Currents(a) => ("currents", a),
        Command::ChargeReport(a) => ("charge-report", a),
        Command::Verify(a) => ("verify", a),
    };

    let mut overrides = BTreeMap::new();
    for raw in &args.tol {
        let (key, value) = tolerances::parse_override(raw)?;
        overrides.insert(key, value);
    }
    let table = tolerances::resolve(&overrides)?;

    let scenario = config::load(&args.config)?;
    std::fs::create_dir_all(&args.out).map_err(|source| CliError::OutputWrite {
        path: args.out.clone(),
        source,
    })?;
    RunManifest {
        command: name.to_string(),
        config_path: args.config.clone(),
        output_dir: args.out.clone(),
        seed: args.seed,
        tolerances: overrides,
    }
    .write(&args.out)?;

    match &cli.command {
        Command::ClassicalEvolve(_) => commands::classical_evolve(&scenario, &args.out),
        Command::Quantize(_) => commands::quantize(&scenario, &args.out),
        Command::Currents(_) => commands::currents(&scenario, &args.out),
        Command::ChargeReport(_) => commands::charge_report_cmd(&scenario, &args.out),
        Command::Verify(_) => verify::run_and_report(&scenario, args.seed, table, &args.out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
