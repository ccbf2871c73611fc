//! Trajectory CSV files and JSON run reports.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::config::{Model, RunConfig};
use super::run::{ConvergenceEstimate, Diagnostics, Simulation};
use crate::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const UNITS: &str = "hbar = k = omega_s = 1; time in 1/omega_s, energy and free energy in hbar*omega_s, \
temperature in hbar*omega_s/k, entropy in k";

pub const TRAJECTORY_COLUMNS: [&str; 16] = [
    "time",
    "re_u",
    "im_u",
    "abs_u",
    "v",
    "energy",
    "entropy",
    "temperature",
    "temp_valid",
    "free_energy",
    "f_valid",
    "heat_cum",
    "work_cum",
    "omega_renorm",
    "gamma",
    "gamma_tilde",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSummary {
    pub t0: f64,
    pub t_max: f64,
    pub step: f64,
    pub n_steps: usize,
    pub stride: usize,
    pub output_points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counts {
    pub temperature_undefined: usize,
    pub free_energy_undefined: usize,
    pub coefficients_undefined: usize,
    pub clamped_populations: usize,
    pub singular_bands: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandRecord {
    pub start_time: f64,
    pub end_time: f64,
    pub delta_energy: Option<f64>,
    pub delta_free_energy: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TerminalValues {
    pub time: f64,
    pub abs_u: f64,
    pub v: f64,
    pub energy: f64,
    pub entropy: f64,
    pub temperature: Option<f64>,
    pub free_energy: Option<f64>,
    pub heat_cum: f64,
    pub work_cum: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub version: String,
    pub config: RunConfig,
    pub units: String,
    pub grid: GridSummary,
    pub bound_state: Option<bool>,
    pub assumptions: Vec<String>,
    pub counts: Counts,
    pub singular_bands: Vec<BandRecord>,
    pub entropy_maxima: Vec<f64>,
    pub diagnostics: Diagnostics,
    pub convergence: Option<ConvergenceEstimate>,
    pub terminal: TerminalValues,
}

/// Files written by a single run.
#[derive(Debug, Clone)]
pub struct RunArtifacts {
    pub trajectory: PathBuf,
    pub report: PathBuf,
}

impl RunReport {
    pub fn from_simulation(sim: &Simulation) -> Self {
        let grid = *sim.grid();
        let thermo = sim.thermo();
        let last = sim.last_index();
        let config = sim.config().clone();

        let mut assumptions = Vec::new();
        let bound_state = match sim.model() {
            Model::Cavity { bath, reservoir, .. } => {
                assumptions.push("kT0 is measured in units of hbar*omega_s; a kT0 quoted in hbar*omega_0 for the cavity is taken with omega_0 = omega_s".to_string());
                if reservoir.is_vacuum() {
                    assumptions.push("reservoir initially in the vacuum state".to_string());
                }
                Some(bath.has_bound_state())
            }
            Model::Tls { .. } => {
                assumptions.push("two-level atom prepared in the excited state with a vacuum reservoir".to_string());
                None
            }
        };
        assumptions.push("temperature undefined on bands of |dS/dt| < 1e-3 max|dS/dt| around sign changes of dS/dt".to_string());

        let singular_bands = thermo
            .singular_bands()
            .iter()
            .map(|b| {
                let jump = thermo
                    .band_discontinuities()
                    .iter()
                    .find(|d| d.from_index < b.start && d.to_index >= b.end);
                BandRecord {
                    start_time: grid.time(b.start),
                    end_time: grid.time(b.end),
                    delta_energy: jump.map(|d| d.delta_energy),
                    delta_free_energy: jump.and_then(|d| d.delta_free_energy),
                }
            })
            .collect();

        RunReport {
            version: VERSION.to_string(),
            units: UNITS.to_string(),
            grid: GridSummary {
                t0: grid.t0(),
                t_max: grid.t_max(),
                step: grid.step(),
                n_steps: grid.n_steps(),
                stride: config.stride,
                output_points: sim.output_indices().count(),
            },
            bound_state,
            assumptions,
            counts: Counts {
                temperature_undefined: thermo.temperature().iter().filter(|t| t.is_none()).count(),
                free_energy_undefined: thermo.free_energy().iter().filter(|f| f.is_none()).count(),
                coefficients_undefined: sim.coefficients().iter().filter(|c| c.is_none()).count(),
                clamped_populations: sim.diagnostics().clamped_points,
                singular_bands: thermo.singular_bands().len(),
            },
            singular_bands,
            entropy_maxima: thermo.entropy_maxima().into_iter().map(|j| grid.time(j)).collect(),
            diagnostics: *sim.diagnostics(),
            convergence: sim.convergence().copied(),
            terminal: TerminalValues {
                time: grid.time(last),
                abs_u: sim.greens().u().get(last).norm(),
                v: sim.greens().v().get(last),
                energy: thermo.energy()[last],
                entropy: thermo.entropy()[last],
                temperature: thermo.temperature()[last],
                free_energy: thermo.free_energy()[last],
                heat_cum: thermo.heat_cum()[last],
                work_cum: thermo.work_cum()[last],
            },
            config,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            what: "run report".into(),
            reason: e.to_string(),
        })
    }
}

fn num(x: f64) -> String {
    format!("{x:e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// File stem derived from the run label.
pub fn file_stem(config: &RunConfig) -> String {
    let label = config.label.as_deref().unwrap_or("run");
    label
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || "._-".contains(c) { c } else { '_' })
        .collect()
}

/// Writes the trajectory at every `stride`-th grid point.
///
/// An output row reports the temperature and free energy as undefined when
/// the interval since the previous output row touches a singular band, so a
/// band narrower than the output spacing still shows up as a gap.
pub fn write_trajectory_csv<W: Write>(sim: &Simulation, out: W) -> Result<()> {
    let mut out = BufWriter::new(out);
    let config = sim.config();
    writeln!(out, "# qthermo {VERSION} trajectory")?;
    writeln!(out, "# units: {UNITS}")?;
    if let Some(label) = &config.label {
        writeln!(out, "# label: {label}")?;
    }
    writeln!(
        out,
        "# empty fields: temperature and free energy inside singular bands, coefficients where |u| < 1e-8"
    )?;

    let thermo = sim.thermo();
    let bands = thermo.singular_bands();
    let u = sim.greens().u();
    let v = sim.greens().v();
    let mut csv = csv::Writer::from_writer(out);
    csv.write_record(TRAJECTORY_COLUMNS).map_err(csv_error)?;
    let mut previous = 0;
    for j in sim.output_indices() {
        let crosses = bands.iter().any(|b| {
            if j == 0 {
                b.contains(0)
            } else {
                b.end > previous && b.start <= j
            }
        });
        previous = j;
        let temperature = if crosses { None } else { thermo.temperature()[j] };
        let free = if crosses && thermo.entropy()[j] != 0.0 {
            None
        } else {
            thermo.free_energy()[j]
        };
        let c = sim.coefficients()[j];
        let record = [
            num(sim.grid().time(j)),
            num(u.get(j).re),
            num(u.get(j).im),
            num(u.get(j).norm()),
            num(v.get(j)),
            num(thermo.energy()[j]),
            num(thermo.entropy()[j]),
            opt(temperature),
            (temperature.is_some() as u8).to_string(),
            opt(free),
            (free.is_some() as u8).to_string(),
            num(thermo.heat_cum()[j]),
            num(thermo.work_cum()[j]),
            opt(c.map(|c| c.omega_renorm)),
            opt(c.map(|c| c.gamma)),
            opt(c.map(|c| c.gamma_tilde)),
        ];
        csv.write_record(&record).map_err(csv_error)?;
    }
    csv.flush()?;
    Ok(())
}

pub(crate) fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Parse {
            what: "csv".into(),
            reason: format!("{other:?}"),
        },
    }
}

/// Runs `config` and writes `<label>.csv` and `<label>.report.json` into `out_dir`.
pub fn run_single(config: &RunConfig, out_dir: &Path) -> Result<(Simulation, RunArtifacts)> {
    let sim = Simulation::run(config)?;
    let artifacts = write_run(&sim, out_dir)?;
    Ok((sim, artifacts))
}

pub fn write_run(sim: &Simulation, out_dir: &Path) -> Result<RunArtifacts> {
    std::fs::create_dir_all(out_dir)?;
    let stem = file_stem(sim.config());
    let trajectory = out_dir.join(format!("{stem}.csv"));
    let report = out_dir.join(format!("{stem}.report.json"));
    write_trajectory_csv(sim, File::create(&trajectory)?)?;
    std::fs::write(&report, RunReport::from_simulation(sim).to_json() + "\n")?;
    Ok(RunArtifacts { trajectory, report })
}
