//! Single runs: from a configuration to Green's functions, states and the
//! thermodynamic trajectory.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{Model, RunConfig, TlsPropagator};
use crate::greens::{
    cavity_trajectory, compute_u_tls_analytic, compute_u_tls_volterra, tls_trajectory,
    GreensTrajectory,
};
use crate::numerics::TimeGrid;
use crate::states::{
    cavity_populations, master_eq_coefficients, moment_identity_residual, tls_population,
    MasterEqCoefficients,
};
use crate::thermo::{DiagonalState, ThermoTrajectory};
use crate::Result;

/// Property checks collected over every grid point of a run.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Diagnostics {
    pub max_normalization_error: f64,
    pub max_moment_residual: f64,
    pub min_population: f64,
    pub max_fock_cutoff: usize,
    pub clamped_points: usize,
    pub first_law_residual: f64,
}

/// Difference between a run and the same run at half the step, on the
/// coarse grid. For a second-order scheme the error of the coarse run is
/// about `4/3` of the difference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceEstimate {
    pub refined_step: f64,
    pub max_u_difference: f64,
    pub max_v_difference: f64,
    pub max_energy_difference: f64,
    pub max_entropy_difference: f64,
    pub estimated_u_error: f64,
}

#[derive(Debug, Clone)]
pub struct Simulation {
    config: RunConfig,
    model: Model,
    greens: GreensTrajectory,
    thermo: ThermoTrajectory,
    coefficients: Vec<Option<MasterEqCoefficients>>,
    diagnostics: Diagnostics,
    convergence: Option<ConvergenceEstimate>,
}

struct PointState {
    energy: f64,
    entropy: f64,
    normalization_error: f64,
    moment_residual: f64,
    min_population: f64,
    cutoff: usize,
    clamped: bool,
}

fn greens_for(model: &Model, grid: &TimeGrid) -> Result<GreensTrajectory> {
    match model {
        Model::Cavity {
            bath, reservoir, ..
        } => cavity_trajectory(bath, reservoir, grid),
        Model::Tls { bath, propagator } => {
            let u = match propagator {
                TlsPropagator::Analytic => compute_u_tls_analytic(bath, grid)?,
                TlsPropagator::Volterra => compute_u_tls_volterra(bath, grid)?,
            };
            tls_trajectory(u)
        }
    }
}

fn point_state(model: &Model, greens: &GreensTrajectory, j: usize) -> Result<PointState> {
    match model {
        Model::Cavity { n0, .. } => {
            let state = cavity_populations(greens, *n0, j)?;
            Ok(PointState {
                energy: state.energy(),
                entropy: state.entropy(),
                normalization_error: (state.total_probability() - 1.0).abs(),
                moment_residual: moment_identity_residual(&state, greens, j),
                min_population: state.populations().iter().copied().fold(f64::INFINITY, f64::min),
                cutoff: state.n_max(),
                clamped: false,
            })
        }
        Model::Tls { .. } => {
            let (state, clamped) = tls_population(greens.u(), j)?;
            Ok(PointState {
                energy: state.energy(),
                entropy: state.entropy(),
                normalization_error: 0.0,
                moment_residual: 0.0,
                min_population: state.p_excited.min(1.0 - state.p_excited),
                cutoff: 1,
                clamped,
            })
        }
    }
}

impl Simulation {
    /// Runs the configured model on its full grid.
    pub fn run(config: &RunConfig) -> Result<Self> {
        let mut sim = Self::run_once(config)?;
        if config.verify_step {
            let refined = RunConfig {
                step: Some(0.5 * config.effective_step()),
                stride: config.stride * 2,
                verify_step: false,
                ..config.clone()
            };
            let fine = Self::run_once(&refined)?;
            sim.convergence = Some(sim.compare_with_refined(&fine));
        }
        Ok(sim)
    }

    fn run_once(config: &RunConfig) -> Result<Self> {
        let model = config.model()?;
        let grid = config.grid()?;
        let greens = greens_for(&model, &grid)?;
        let points: Vec<PointState> = (0..grid.len())
            .into_par_iter()
            .map(|j| point_state(&model, &greens, j))
            .collect::<Result<_>>()?;

        let mut diagnostics = Diagnostics {
            min_population: f64::INFINITY,
            ..Diagnostics::default()
        };
        for p in &points {
            diagnostics.max_normalization_error = diagnostics.max_normalization_error.max(p.normalization_error);
            diagnostics.max_moment_residual = diagnostics.max_moment_residual.max(p.moment_residual);
            diagnostics.min_population = diagnostics.min_population.min(p.min_population);
            diagnostics.max_fock_cutoff = diagnostics.max_fock_cutoff.max(p.cutoff);
            diagnostics.clamped_points += p.clamped as usize;
        }
        let thermo = ThermoTrajectory::from_series(
            grid,
            points.iter().map(|p| p.energy).collect(),
            points.iter().map(|p| p.entropy).collect(),
        )?;
        diagnostics.first_law_residual = thermo.first_law_residual();
        let coefficients = (0..grid.len())
            .map(|j| master_eq_coefficients(&greens, j))
            .collect();
        Ok(Self {
            config: config.clone(),
            model,
            greens,
            thermo,
            coefficients,
            diagnostics,
            convergence: None,
        })
    }

    fn compare_with_refined(&self, fine: &Simulation) -> ConvergenceEstimate {
        let mut est = ConvergenceEstimate {
            refined_step: fine.grid().step(),
            max_u_difference: 0.0,
            max_v_difference: 0.0,
            max_energy_difference: 0.0,
            max_entropy_difference: 0.0,
            estimated_u_error: 0.0,
        };
        for j in 0..self.grid().len() {
            let k = 2 * j;
            est.max_u_difference = est
                .max_u_difference
                .max((self.greens.u().get(j) - fine.greens.u().get(k)).norm());
            est.max_v_difference = est
                .max_v_difference
                .max((self.greens.v().get(j) - fine.greens.v().get(k)).abs());
            est.max_energy_difference = est
                .max_energy_difference
                .max((self.thermo.energy()[j] - fine.thermo.energy()[k]).abs());
            est.max_entropy_difference = est
                .max_entropy_difference
                .max((self.thermo.entropy()[j] - fine.thermo.entropy()[k]).abs());
        }
        est.estimated_u_error = est.max_u_difference * 4.0 / 3.0;
        est
    }

    pub fn config(&self) -> &RunConfig {
        &self.config
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn grid(&self) -> &TimeGrid {
        self.greens.grid()
    }

    pub fn greens(&self) -> &GreensTrajectory {
        &self.greens
    }

    pub fn thermo(&self) -> &ThermoTrajectory {
        &self.thermo
    }

    pub fn coefficients(&self) -> &[Option<MasterEqCoefficients>] {
        &self.coefficients
    }

    pub fn diagnostics(&self) -> &Diagnostics {
        &self.diagnostics
    }

    pub fn convergence(&self) -> Option<&ConvergenceEstimate> {
        self.convergence.as_ref()
    }

    pub fn last_index(&self) -> usize {
        self.grid().len() - 1
    }

    /// Grid indices written to the trajectory file.
    pub fn output_indices(&self) -> impl Iterator<Item = usize> {
        (0..self.grid().len()).step_by(self.config.stride)
    }

    /// Energy-basis populations at grid index `j`: `W_n` for the cavity,
    /// `[1 - p, p]` for the atom.
    pub fn populations_at(&self, j: usize) -> Result<Vec<f64>> {
        match &self.model {
            Model::Cavity { n0, .. } => Ok(cavity_populations(&self.greens, *n0, j)?.populations().to_vec()),
            Model::Tls { .. } => {
                let (s, _) = tls_population(self.greens.u(), j)?;
                Ok(vec![1.0 - s.p_excited, s.p_excited])
            }
        }
    }

    /// Time intervals after `t_from` on which the temperature is defined and negative.
    pub fn negative_temperature_epochs(&self, t_from: f64) -> Vec<(f64, f64)> {
        let grid = self.grid();
        let mut epochs = Vec::new();
        let mut open: Option<(f64, f64)> = None;
        for (j, t) in self.thermo.temperature().iter().enumerate() {
            let time = grid.time(j);
            let negative = time >= t_from && matches!(t, Some(x) if *x < 0.0);
            match (&mut open, negative) {
                (Some(e), true) => e.1 = time,
                (None, true) => open = Some((time, time)),
                (Some(_), false) => epochs.push(open.take().unwrap()),
                (None, false) => {}
            }
        }
        epochs.extend(open);
        epochs
    }
}
