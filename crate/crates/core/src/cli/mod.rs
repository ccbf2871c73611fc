//! Command-line driver: configuration, presets, runs, sweeps and file output.
//!
//! ```text
//! qthermo simulate <preset|config.toml> [--out DIR] [--stride N] [--verify-step]
//! qthermo sweep <preset|sweep.toml> [--workers N] [--out DIR]
//! qthermo plotdata <trajectory.csv> [--quantity q,...] [--out DIR]
//! ```
//!
//! Exit codes: 0 on success, 2 for invalid configuration or arguments,
//! 3 for numerical failures, 1 for I/O errors.

pub mod config;
pub mod output;
pub mod plot;
pub mod presets;
pub mod run;
pub mod sweep;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

pub use config::{Model, RunConfig, SweepConfig, SweepKey, System, TlsPropagator};
pub use output::{run_single, write_run, RunArtifacts, RunReport};
pub use plot::{emit_plot_data, PLOT_QUANTITIES};
pub use run::{ConvergenceEstimate, Diagnostics, Simulation};
pub use sweep::{run_members, run_sweep};

use crate::{Error, Result};

const DEFAULT_OUT: &str = "out";

#[derive(Debug, Parser)]
#[command(name = "qthermo", version, about = "Exact nonequilibrium thermodynamics of a damped cavity and a two-level atom")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one configuration and write its trajectory and report.
    Simulate {
        /// Preset name (fig2, fig3, fig4, fig4-thermal, fig6, fig6-strong) or TOML file.
        target: String,
        /// Output directory [default: out].
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write every N-th grid point; overrides the config.
        #[arg(long)]
        stride: Option<usize>,
        /// Repeat at half the step and report the difference.
        #[arg(long)]
        verify_step: bool,
    },
    /// Run a parameter sweep and write a long-format table.
    Sweep {
        /// Preset name (fig5) or TOML file.
        target: String,
        /// Worker threads [default: number of values, capped at the core count].
        #[arg(long)]
        workers: Option<usize>,
        /// Output directory [default: out].
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Split a trajectory file into per-quantity plot files.
    Plotdata {
        /// Trajectory CSV written by `simulate`.
        trajectory: PathBuf,
        /// Comma-separated column names [default: all].
        #[arg(long, value_delimiter = ',')]
        quantity: Vec<String>,
        /// Output directory [default: next to the trajectory].
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load_run(target: &str) -> Result<RunConfig> {
    if let Some(config) = presets::run_preset(target) {
        return Ok(config);
    }
    if presets::sweep_preset(target).is_some() {
        return Err(Error::Config(format!("`{target}` is a sweep preset; use `qthermo sweep {target}`")));
    }
    let path = Path::new(target);
    if !path.exists() {
        return Err(Error::Config(format!(
            "`{target}` is neither a preset ({}) nor an existing file",
            presets::RUN_PRESETS.join(", ")
        )));
    }
    RunConfig::from_path(path)
}

fn load_sweep(target: &str) -> Result<SweepConfig> {
    if let Some(config) = presets::sweep_preset(target) {
        return Ok(config);
    }
    let path = Path::new(target);
    if !path.exists() {
        return Err(Error::Config(format!(
            "`{target}` is neither a sweep preset ({}) nor an existing file",
            presets::SWEEP_PRESETS.join(", ")
        )));
    }
    SweepConfig::from_path(path)
}

/// Executes a parsed command.
pub fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Simulate {
            target,
            out,
            stride,
            verify_step,
        } => {
            let mut config = load_run(&target)?;
            if let Some(stride) = stride {
                config.stride = stride;
            }
            config.verify_step |= verify_step;
            config.validate()?;
            let dir = out
                .or_else(|| config.out_dir.clone())
                .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT));
            let (sim, artifacts) = run_single(&config, &dir)?;
            let last = sim.last_index();
            println!(
                "{}: {} steps to t = {}, terminal E = {:.6}, S = {:.6}",
                output::file_stem(&config),
                sim.grid().n_steps(),
                sim.grid().t_max(),
                sim.thermo().energy()[last],
                sim.thermo().entropy()[last]
            );
            println!("wrote {}", artifacts.trajectory.display());
            println!("wrote {}", artifacts.report.display());
        }
        Command::Sweep { target, workers, out } => {
            let mut config = load_sweep(&target)?;
            if workers.is_some() {
                config.workers = workers;
            }
            config.validate()?;
            let dir = out
                .or_else(|| config.out_dir.clone())
                .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT));
            let workers = config.worker_count();
            println!(
                "sweeping {} over {} values on {workers} workers",
                config.sweep_key.name(),
                config.values.len()
            );
            let (members, path) = run_sweep(&config, workers, &dir)?;
            for (value, sim) in &members {
                let last = sim.last_index();
                println!(
                    "{} = {value}: terminal E = {:.6}",
                    config.sweep_key.name(),
                    sim.thermo().energy()[last]
                );
            }
            println!("wrote {}", path.display());
        }
        Command::Plotdata {
            trajectory,
            quantity,
            out,
        } => {
            for path in emit_plot_data(&trajectory, &quantity, out.as_deref())? {
                println!("wrote {}", path.display());
            }
        }
    }
    Ok(())
}

/// Parses `args`, runs the command and returns the process exit code.
/// Diagnostics go to stderr.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
