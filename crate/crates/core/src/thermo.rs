//! Nonequilibrium thermodynamics along a trajectory of diagonal states.
//!
//! Energy `E`, von Neumann entropy `S`, temperature `T = (dE/dt)/(dS/dt)`,
//! free energy `F = E - T S`, and the cumulative heat and work
//! `W = -sum dF`, `Q = sum (dE - dF)`.
//!
//! `T` diverges where `S` turns around while `E` keeps moving. Around every
//! such pole the points with `|dS/dt| < S_FLOOR * max |dS/dt|` form a
//! singular band on which `T` and `F` are undefined; heat and work are not
//! accumulated across a band and the jump of `E` and `F` over it is reported
//! instead. Where `dE/dt` and `dS/dt` vanish together the ratio stays finite
//! and no band is placed.

use serde::Serialize;

use crate::numerics::{derivative, TimeGrid};
use crate::states::{CavityState, TlsState};
use crate::{Error, Result};

/// Relative threshold on `|dS/dt|` that delimits a singular band.
pub const S_FLOOR: f64 = 1e-3;

/// `T` is undefined where `|dS/dt|` is within this factor of the rounding
/// error of a difference quotient of `S`, `eps max|S| / h`.
pub const RESOLUTION_FACTOR: f64 = 1e3;

/// A state with a diagonal density matrix in the energy basis.
pub trait DiagonalState {
    /// Mean energy in units of the system frequency.
    fn energy(&self) -> f64;

    /// `-sum p ln p`, with `0 ln 0 = 0`.
    fn entropy(&self) -> f64;
}

impl DiagonalState for CavityState {
    fn energy(&self) -> f64 {
        crate::states::mean_photon_number(self)
    }

    fn entropy(&self) -> f64 {
        shannon_entropy(self.populations().iter().copied())
    }
}

impl DiagonalState for TlsState {
    fn energy(&self) -> f64 {
        self.p_excited
    }

    fn entropy(&self) -> f64 {
        shannon_entropy([self.p_excited, 1.0 - self.p_excited])
    }
}

pub fn energy<S: DiagonalState>(state: &S) -> f64 {
    state.energy()
}

pub fn entropy<S: DiagonalState>(state: &S) -> f64 {
    state.entropy()
}

fn shannon_entropy(probabilities: impl IntoIterator<Item = f64>) -> f64 {
    let s: f64 = probabilities
        .into_iter()
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.ln())
        .sum();
    s.max(0.0)
}

/// Compensated (Neumaier) running sum.
#[derive(Debug, Clone, Copy, Default)]
struct Neumaier {
    sum: f64,
    carry: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Inclusive range of grid indices on which the temperature is undefined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SingularBand {
    pub start: usize,
    pub end: usize,
}

impl SingularBand {
    pub fn contains(&self, j: usize) -> bool {
        (self.start..=self.end).contains(&j)
    }
}

/// Change of `E` and `F` between the last valid point before a gap in `F`
/// and the first valid point after it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BandDiscontinuity {
    pub from_index: usize,
    pub to_index: usize,
    pub from_time: f64,
    pub to_time: f64,
    pub delta_energy: f64,
    pub delta_free_energy: Option<f64>,
}

/// Temperature along a trajectory with its singular bands.
#[derive(Debug, Clone, PartialEq)]
pub struct TemperatureSeries {
    pub values: Vec<Option<f64>>,
    pub bands: Vec<SingularBand>,
}

/// `T = (dE/dt) / (dS/dt)` at every grid point, using centered differences
/// with second-order one-sided stencils at the ends. Undefined inside
/// singular bands and where `dS/dt` is not resolved above rounding error.
pub fn temperature_series(energy: &[f64], entropy: &[f64], h: f64) -> Result<TemperatureSeries> {
    if energy.len() != entropy.len() || energy.len() < 3 {
        return Err(Error::Contract(format!(
            "need matching series of at least 3 points, got {} and {}",
            energy.len(),
            entropy.len()
        )));
    }
    let de = derivative(energy, h);
    let ds = derivative(entropy, h);
    let bands = singular_bands(&de, &ds);
    let s_scale = entropy.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let resolution = RESOLUTION_FACTOR * f64::EPSILON * s_scale / h;
    let values = (0..energy.len())
        .map(|j| {
            if ds[j].abs() <= resolution || bands.iter().any(|b| b.contains(j)) {
                None
            } else {
                Some(de[j] / ds[j])
            }
        })
        .collect();
    Ok(TemperatureSeries { values, bands })
}

/// Temperature at a single index of a partial trajectory.
pub fn temperature(energy: &[f64], entropy: &[f64], h: f64, time_index: usize) -> Result<Option<f64>> {
    let series = temperature_series(energy, entropy, h)?;
    series
        .values
        .get(time_index)
        .copied()
        .ok_or_else(|| Error::Contract(format!("time index {time_index} out of range")))
}

/// Bands of small `|dS/dt|` around the poles of `T = (dE/dt)/(dS/dt)`.
///
/// A pole is a sign change of `dS/dt` with no sign change of `dE/dt` in the
/// same or an adjacent grid interval. If `dE/dt` changes sign nearby the
/// singularity is removable, and only grid points caught between the two
/// zeros (where `T` has the wrong sign) are marked. A monotone approach to a
/// steady state makes `|dS/dt|` small without any sign change and is not
/// singular either.
pub fn singular_bands(de: &[f64], ds: &[f64]) -> Vec<SingularBand> {
    let n = ds.len();
    let scale = ds.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if scale == 0.0 || de.len() != n {
        return Vec::new();
    }
    let floor = S_FLOOR * scale;
    let low = |j: usize| ds[j].abs() < floor;
    let low_run = |j: usize| -> (usize, usize) {
        let mut a = j;
        while a > 0 && low(a - 1) {
            a -= 1;
        }
        let mut b = j;
        while b + 1 < n && low(b + 1) {
            b += 1;
        }
        (a, b)
    };
    let flips = |x: &[f64], i: usize| -> bool {
        (x[i] == 0.0) != (x[i + 1] == 0.0) || x[i] * x[i + 1] < 0.0
    };
    let sign_t = |j: usize| (de[j] * ds[j]).signum();

    let mut bands: Vec<SingularBand> = Vec::new();
    let mut push = |start: usize, end: usize| match bands.last_mut() {
        Some(last) if start <= last.end + 1 => last.end = last.end.max(end),
        _ => bands.push(SingularBand { start, end }),
    };
    for i in 0..n.saturating_sub(1) {
        if !flips(ds, i) {
            continue;
        }
        let removable = (i.saturating_sub(1)..=(i + 1).min(n - 2)).any(|k| flips(de, k));
        if removable {
            let outside = if i > 0 { sign_t(i - 1) } else if i + 2 < n { sign_t(i + 2) } else { continue };
            for j in [i, i + 1] {
                if ds[j] != 0.0 && de[j] != 0.0 && sign_t(j) != outside {
                    push(j, j);
                }
            }
            continue;
        }
        let (start, end) = match (low(i), low(i + 1)) {
            (false, false) => (i, i + 1),
            (true, _) => low_run(i),
            (false, true) => low_run(i + 1),
        };
        push(start, end);
    }
    bands
}

/// `F = E - T S`. With `S = 0` the product vanishes and `F = E` even where `T`
/// is undefined.
pub fn free_energy(energy: f64, temperature: Option<f64>, entropy: f64) -> Option<f64> {
    if entropy == 0.0 {
        return Some(energy);
    }
    temperature.map(|t| energy - t * entropy)
}

/// Cumulative heat and work with the jumps over undefined stretches of `F`.
#[derive(Debug, Clone, PartialEq)]
pub struct HeatWork {
    pub heat: Vec<f64>,
    pub work: Vec<f64>,
    pub discontinuities: Vec<BandDiscontinuity>,
    /// Largest `|Q - (sum of accumulated dE) - W|` along the trajectory.
    pub first_law_residual: f64,
}

/// Accumulates `W = -sum dF` and `Q = sum (dE - dF)` over consecutive pairs
/// where `F` is defined at both ends. Elsewhere the sums are held.
pub fn heat_and_work(grid: &TimeGrid, energy: &[f64], free_energy: &[Option<f64>]) -> Result<HeatWork> {
    let n = energy.len();
    if free_energy.len() != n || n != grid.len() {
        return Err(Error::Contract("energy, free energy and grid lengths differ".into()));
    }
    let mut heat = Vec::with_capacity(n);
    let mut work = Vec::with_capacity(n);
    let mut discontinuities = Vec::new();
    let (mut q, mut w, mut e_acc) = (Neumaier::default(), Neumaier::default(), Neumaier::default());
    let mut residual = 0.0f64;
    let mut last_valid: Option<usize> = free_energy.first().and_then(|f| f.map(|_| 0));
    heat.push(0.0);
    work.push(0.0);

    for j in 1..n {
        match (free_energy[j - 1], free_energy[j]) {
            (Some(f0), Some(f1)) => {
                let de = energy[j] - energy[j - 1];
                let df = f1 - f0;
                q.add(de);
                q.add(-df);
                w.add(-df);
                e_acc.add(de);
            }
            (None, Some(f1)) => {
                if let Some(a) = last_valid {
                    discontinuities.push(BandDiscontinuity {
                        from_index: a,
                        to_index: j,
                        from_time: grid.time(a),
                        to_time: grid.time(j),
                        delta_energy: energy[j] - energy[a],
                        delta_free_energy: free_energy[a].map(|f0| f1 - f0),
                    });
                }
            }
            _ => {}
        }
        if free_energy[j].is_some() {
            last_valid = Some(j);
        }
        heat.push(q.value());
        work.push(w.value());
        residual = residual.max((q.value() - e_acc.value() - w.value()).abs());
    }

    if let Some(a) = last_valid {
        if a + 1 < n && free_energy[n - 1].is_none() {
            discontinuities.push(BandDiscontinuity {
                from_index: a,
                to_index: n - 1,
                from_time: grid.time(a),
                to_time: grid.time(n - 1),
                delta_energy: energy[n - 1] - energy[a],
                delta_free_energy: None,
            });
        }
    }

    Ok(HeatWork {
        heat,
        work,
        discontinuities,
        first_law_residual: residual,
    })
}

/// The full thermodynamic trajectory on a time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermoTrajectory {
    grid: TimeGrid,
    energy: Vec<f64>,
    entropy: Vec<f64>,
    temperature: Vec<Option<f64>>,
    free_energy: Vec<Option<f64>>,
    heat: HeatWork,
    bands: Vec<SingularBand>,
}

impl ThermoTrajectory {
    pub fn from_series(grid: TimeGrid, energy: Vec<f64>, entropy: Vec<f64>) -> Result<Self> {
        if energy.len() != grid.len() {
            return Err(Error::Contract(format!(
                "{} energies for a grid of {} points",
                energy.len(),
                grid.len()
            )));
        }
        if let Some(j) = energy.iter().chain(&entropy).position(|x| !x.is_finite()) {
            return Err(Error::numerical(j % grid.len(), "non-finite energy or entropy"));
        }
        let temps = temperature_series(&energy, &entropy, grid.step())?;
        let free: Vec<Option<f64>> = (0..energy.len())
            .map(|j| free_energy(energy[j], temps.values[j], entropy[j]))
            .collect();
        let heat = heat_and_work(&grid, &energy, &free)?;
        Ok(Self {
            grid,
            energy,
            entropy,
            temperature: temps.values,
            free_energy: free,
            heat,
            bands: temps.bands,
        })
    }

    pub fn from_states<S: DiagonalState>(grid: TimeGrid, states: &[S]) -> Result<Self> {
        Self::from_series(
            grid,
            states.iter().map(DiagonalState::energy).collect(),
            states.iter().map(DiagonalState::entropy).collect(),
        )
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn len(&self) -> usize {
        self.energy.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energy.is_empty()
    }

    pub fn energy(&self) -> &[f64] {
        &self.energy
    }

    pub fn entropy(&self) -> &[f64] {
        &self.entropy
    }

    pub fn temperature(&self) -> &[Option<f64>] {
        &self.temperature
    }

    pub fn free_energy(&self) -> &[Option<f64>] {
        &self.free_energy
    }

    pub fn heat_cum(&self) -> &[f64] {
        &self.heat.heat
    }

    pub fn work_cum(&self) -> &[f64] {
        &self.heat.work
    }

    pub fn singular_bands(&self) -> &[SingularBand] {
        &self.bands
    }

    pub fn singular_indices(&self) -> Vec<usize> {
        self.bands.iter().flat_map(|b| b.start..=b.end).collect()
    }

    pub fn band_discontinuities(&self) -> &[BandDiscontinuity] {
        &self.heat.discontinuities
    }

    pub fn first_law_residual(&self) -> f64 {
        self.heat.first_law_residual
    }

    /// Interior strict local maxima of the entropy.
    pub fn entropy_maxima(&self) -> Vec<usize> {
        let s = &self.entropy;
        (1..s.len().saturating_sub(1))
            .filter(|&j| s[j] > s[j - 1] && s[j] >= s[j + 1])
            .collect()
    }
}
