use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Uniform time grid `t_j = t0 + j*h`, `j = 0..=n_steps`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    t0: f64,
    t_max: f64,
    n_steps: usize,
    h: f64,
}

impl TimeGrid {
    pub fn new(t0: f64, t_max: f64, n_steps: usize) -> Result<Self> {
        if !t0.is_finite() || !t_max.is_finite() {
            return Err(Error::Contract(format!(
                "grid bounds must be finite (t0 = {t0}, t_max = {t_max})"
            )));
        }
        if n_steps < 2 {
            return Err(Error::Contract(format!(
                "a grid needs at least 2 steps, got {n_steps}"
            )));
        }
        let h = (t_max - t0) / n_steps as f64;
        if !(h > 0.0) {
            return Err(Error::Contract(format!(
                "grid step must be positive (t0 = {t0}, t_max = {t_max})"
            )));
        }
        Ok(Self {
            t0,
            t_max,
            n_steps,
            h,
        })
    }

    /// Builds a grid from a step size. `(t_max - t0) / h` must be an integer
    /// to within a relative `1e-9`.
    pub fn with_step(t0: f64, t_max: f64, h: f64) -> Result<Self> {
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::Contract(format!("step must be positive, got {h}")));
        }
        let ratio = (t_max - t0) / h;
        let n_steps = ratio.round();
        if (ratio - n_steps).abs() > 1e-9 * ratio.abs().max(1.0) {
            return Err(Error::Contract(format!(
                "step {h} does not divide the interval [{t0}, {t_max}]"
            )));
        }
        Self::new(t0, t_max, n_steps as usize)
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn step(&self) -> f64 {
        self.h
    }

    /// Number of grid points, `n_steps + 1`.
    pub fn len(&self) -> usize {
        self.n_steps + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn time(&self, j: usize) -> f64 {
        self.t0 + j as f64 * self.h
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(move |j| self.time(j))
    }

    /// Same interval with half the step.
    pub fn refined(&self) -> Self {
        Self {
            t0: self.t0,
            t_max: self.t_max,
            n_steps: 2 * self.n_steps,
            h: (self.t_max - self.t0) / (2 * self.n_steps) as f64,
        }
    }
}

/// Scalar types a [`Series`] may carry.
pub trait SeriesValue:
    Copy + Zero + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn is_finite_value(&self) -> bool;
}

impl SeriesValue for f64 {
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl SeriesValue for Complex64 {
    fn is_finite_value(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// One value per point of a [`TimeGrid`]. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct Series<T> {
    grid: TimeGrid,
    values: Vec<T>,
}

pub type ComplexSeries = Series<Complex64>;
pub type RealSeries = Series<f64>;

impl<T: SeriesValue> Series<T> {
    pub fn new(grid: TimeGrid, values: Vec<T>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Contract(format!(
                "series has {} values, grid has {} points",
                values.len(),
                grid.len()
            )));
        }
        if let Some(j) = values.iter().position(|v| !v.is_finite_value()) {
            return Err(Error::numerical(j, "non-finite series value"));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: TimeGrid) -> Self {
        Self {
            grid,
            values: vec![T::zero(); grid.len()],
        }
    }
}

impl<T> Series<T> {
    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }
}

impl<T: Copy> Series<T> {
    pub fn get(&self, j: usize) -> T {
        self.values[j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_points_are_uniform() {
        let grid = TimeGrid::new(0.0, 1.0, 100).unwrap();
        assert_eq!(grid.len(), 101);
        assert!((grid.step() - 0.01).abs() < 1e-15);
        assert!((grid.time(100) - 1.0).abs() < 1e-12);
        assert!(grid.times().zip(grid.times().skip(1)).all(|(a, b)| b > a));
    }

    #[test]
    fn degenerate_grids_are_rejected() {
        assert!(TimeGrid::new(0.0, 1.0, 1).is_err());
        assert!(TimeGrid::new(1.0, 1.0, 10).is_err());
        assert!(TimeGrid::new(0.0, f64::NAN, 10).is_err());
        assert!(TimeGrid::with_step(0.0, 1.0, 0.3).is_err());
        assert_eq!(TimeGrid::with_step(0.0, 100.0, 0.01).unwrap().n_steps(), 10_000);
    }

    #[test]
    fn series_length_and_finiteness_are_checked() {
        let grid = TimeGrid::new(0.0, 1.0, 4).unwrap();
        assert!(RealSeries::new(grid, vec![0.0; 4]).is_err());
        assert!(RealSeries::new(grid, vec![0.0, 1.0, f64::NAN, 0.0, 0.0]).is_err());
        assert!(RealSeries::new(grid, vec![0.0; 5]).is_ok());
    }
}
