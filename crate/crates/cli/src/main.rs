//! Command-line front end: one subcommand per scenario kind, a handful of
//! global overrides, and three exit codes (0 ok, 2 bad config, 3 run failed).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cavcool::{run_scenario, validate_config, Error, ScenarioKind};

#[derive(Parser)]
#[command(name = "cavcool", version, about = "Cavity-cooling trajectory simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Key = value config file; omitted means built-in defaults.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Master seed, overriding any `seed` key in the config.
    #[arg(long, global = true, value_name = "U64")]
    seed: Option<u64>,

    /// Output directory for this run (created; must not already hold a manifest).
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Worker threads for ensemble propagation (default: one per core).
    #[arg(long, global = true, value_name = "N")]
    workers: Option<usize>,

    /// Integrator step in nanoseconds, overriding the config.
    #[arg(long = "dt-ns", global = true, value_name = "F")]
    dt_ns: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Launch atoms through the cavity and count which ones cool into a well.
    Capture,
    /// Hold bound atoms with the pump on and record clicks until loss.
    Storage,
    /// Storage-time scan over cavity detunings, plus an optional pump-off arm.
    #[command(name = "lifetime_sweep")]
    LifetimeSweep,
    /// Click statistics for a small thermal ensemble: count histogram and steps.
    Histogram,
    /// Tabulate friction coefficients against cavity detuning.
    Frictionmap,
    /// Pump-off background-loss run used to calibrate the vacuum lifetime.
    Calibrate,
}

impl Command {
    fn kind(&self) -> ScenarioKind {
        match self {
            Command::Capture => ScenarioKind::Capture,
            Command::Storage => ScenarioKind::Storage,
            Command::LifetimeSweep => ScenarioKind::LifetimeSweep,
            Command::Histogram => ScenarioKind::Histogram,
            Command::Frictionmap => ScenarioKind::Frictionmap,
            Command::Calibrate => ScenarioKind::Calibrate,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let kind = cli.command.kind();
    match run(cli, kind) {
        Ok(out_dir) => {
            println!("{}: outputs in {}", kind.name(), out_dir.display());
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("cavcool {}: {err}", kind.name());
            match err {
                // Everything wrong with the inputs, including an unreadable
                // config file and a hand-set dt the trap cannot resolve.
                Error::Config(_) | Error::InvalidParameter { .. } | Error::TimeStepTooLarge { .. } => {
                    ExitCode::from(2)
                }
                _ => ExitCode::from(3),
            }
        }
    }
}

fn run(cli: Cli, kind: ScenarioKind) -> Result<PathBuf, Error> {
    let text = match &cli.config {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::InvalidParameter {
            key: "config".into(),
            reason: format!("cannot read {}: {e}", path.display()),
        })?,
        None => String::new(),
    };

    let mut scenario = validate_config(&text, Some(kind))?;
    if let Some(seed) = cli.seed {
        scenario.seed = seed;
    }
    if let Some(dt_ns) = cli.dt_ns {
        if !dt_ns.is_finite() || dt_ns <= 0.0 {
            return Err(Error::InvalidParameter {
                key: "dt-ns".into(),
                reason: "time step must be positive".into(),
            });
        }
        scenario.run.dt = dt_ns * 1e-9;
        scenario
            .run
            .validate(&scenario.params, &scenario.geometry)?;
    }

    let out_dir = cli
        .out
        .unwrap_or_else(|| PathBuf::from(format!("out-{}", kind.name())));
    run_scenario(&scenario, &out_dir, cli.workers)?;
    Ok(out_dir)
}
