//! Parameter sweeps over independent runs.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::config::SweepConfig;
use super::output::{csv_error, UNITS, VERSION};
use super::run::Simulation;
use crate::{Error, Result};

pub const SWEEP_COLUMNS: [&str; 6] = ["swept_key", "swept_value", "time", "energy", "temperature", "temp_valid"];

/// Runs every member of the sweep on a pool of `workers` threads.
/// Results are in the order of the swept values regardless of scheduling.
pub fn run_members(config: &SweepConfig, workers: usize) -> Result<Vec<(f64, Simulation)>> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Config(format!("cannot start {workers} workers: {e}")))?;
    pool.install(|| {
        config
            .values
            .par_iter()
            .map(|&value| {
                config
                    .member(value)
                    .and_then(|run| Simulation::run(&run))
                    .map(|sim| (value, sim))
                    .map_err(|e| Error::SweepMember {
                        key: config.sweep_key.name(),
                        value,
                        source: Box::new(e),
                    })
            })
            .collect()
    })
}

/// Writes the long-format table: one row per swept value and output time.
pub fn write_sweep_csv<W: Write>(config: &SweepConfig, members: &[(f64, Simulation)], out: W) -> Result<()> {
    let mut out = BufWriter::new(out);
    writeln!(out, "# qthermo {VERSION} sweep over {}", config.sweep_key.name())?;
    writeln!(out, "# units: {UNITS}")?;
    let mut csv = csv::Writer::from_writer(out);
    csv.write_record(SWEEP_COLUMNS).map_err(csv_error)?;
    for (value, sim) in members {
        let thermo = sim.thermo();
        for j in sim.output_indices() {
            let t = thermo.temperature()[j];
            csv.write_record([
                config.sweep_key.name().to_string(),
                format!("{value:e}"),
                format!("{:e}", sim.grid().time(j)),
                format!("{:e}", thermo.energy()[j]),
                t.map(|t| format!("{t:e}")).unwrap_or_default(),
                (t.is_some() as u8).to_string(),
            ])
            .map_err(csv_error)?;
        }
    }
    csv.flush()?;
    Ok(())
}

/// Runs the sweep and writes `sweep.csv` into `out_dir`.
pub fn run_sweep(config: &SweepConfig, workers: usize, out_dir: &Path) -> Result<(Vec<(f64, Simulation)>, PathBuf)> {
    let members = run_members(config, workers)?;
    std::fs::create_dir_all(out_dir)?;
    let path = out_dir.join("sweep.csv");
    write_sweep_csv(config, &members, File::create(&path)?)?;
    Ok((members, path))
}
