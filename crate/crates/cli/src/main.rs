mod config;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use vortex_sheet::dynamics::{simulate, RhsMode, Termination};
use vortex_sheet::{acceptance, io, observables, prequant, stationarity, Result};

use config::RunConfig;

#[derive(Parser)]
#[command(
    name = "vortex-sheet",
    version,
    about = "Circle-invariant vortex sheet simulator and checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate the flow and write CSV output.
    Simulate(Common),
    /// Print the conserved quantities as JSON.
    Observe(Common),
    /// Print the stationarity report as JSON.
    Stationary(Common),
    /// Print the component (m, n, ell) as JSON.
    Classify(Common),
    /// Print the prequantization report as JSON.
    Prequant(Common),
    /// Run the built-in acceptance checks.
    Verify,
}

#[derive(Args)]
struct Common {
    /// JSON run configuration; a (2, 1) torus with parallel circles if omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory (simulate only); created if missing.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    t_final: Option<f64>,
    #[arg(long)]
    grid_n: Option<usize>,
    #[arg(long, value_enum)]
    rhs: Option<Rhs>,
    /// Also write one profile CSV per recorded state.
    #[arg(long)]
    snapshots: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rhs {
    Closed,
    Geometric,
    Crosscheck,
}

impl From<Rhs> for RhsMode {
    fn from(r: Rhs) -> Self {
        match r {
            Rhs::Closed => RhsMode::ClosedForm,
            Rhs::Geometric => RhsMode::Geometric,
            Rhs::Crosscheck => RhsMode::CrossCheck,
        }
    }
}

impl Common {
    fn load(&self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::from_json(&fs::read_to_string(path)?)?,
            None => RunConfig::default(),
        };
        if let Some(n) = self.grid_n {
            cfg.preset.grid.n = n;
        }
        if let Some(dt) = self.dt {
            cfg.simulation.dt = dt;
        }
        if let Some(t) = self.t_final {
            cfg.simulation.t_final = t;
        }
        if let Some(rhs) = self.rhs {
            cfg.simulation.rhs_mode = rhs.into();
        }
        if let Some(out) = &self.out {
            cfg.out = Some(out.clone());
        }
        cfg.snapshots |= self.snapshots;
        Ok(cfg)
    }
}

/// Writes to stdout without panicking when the reader goes away (`| head`).
fn emit(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{text}")?;
    Ok(())
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<ExitCode> {
    emit(&serde_json::to_string_pretty(value)?)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_simulate(args: &Common) -> Result<ExitCode> {
    let cfg = args.load()?;
    let sheet = cfg.preset.build()?;
    let traj = simulate(&sheet, &cfg.simulation)?;
    let dir = cfg.out.unwrap_or_else(|| PathBuf::from("out"));
    let files = io::write_trajectory(&dir, &traj, cfg.snapshots)?;

    let truncated = match &traj.termination {
        Termination::Completed => None,
        Termination::Truncated { step, t, reason } => Some(json!({"step": step, "t": t, "reason": reason})),
    };
    let summary = json!({
        "completed": truncated.is_none(),
        "truncated": truncated,
        "t_final": traj.times.last(),
        "recorded_states": traj.states.len(),
        "max_rel_drift": traj.max_rel_drift,
        "drift_warnings": traj.warnings.len(),
        "files": files.len(),
        "out": dir,
    });
    emit(&serde_json::to_string_pretty(&summary)?)?;
    Ok(if traj.is_truncated() {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_verify() -> Result<ExitCode> {
    let outcomes = acceptance::run_all();
    for o in &outcomes {
        emit(&o.to_string())?;
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    emit(&format!("{passed}/{} checks passed", outcomes.len()))?;
    Ok(if passed == outcomes.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Simulate(args) => cmd_simulate(&args),
        Command::Observe(args) => print_json(&observables::observable_set(&args.load()?.preset.build()?)?),
        Command::Stationary(args) => {
            let cfg = args.load()?;
            print_json(&stationarity::stationarity_report_with(
                &cfg.preset.build()?,
                &cfg.tolerances,
            )?)
        }
        Command::Classify(args) => print_json(&stationarity::classify(&args.load()?.preset.build()?)?),
        Command::Prequant(args) => print_json(&prequant::onsager_feynman(&args.load()?.preset.build()?)?),
        Command::Verify => cmd_verify(),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
