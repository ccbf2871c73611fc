//! Exact nonequilibrium thermodynamics of single-mode open quantum systems.
//!
//! Two systems are covered: a single-mode cavity coupled to an Ohmic bosonic
//! reservoir, and a two-level atom coupled to a Lorentzian reservoir. The
//! reduced dynamics of both is fully determined by the propagating Green's
//! function `u(t, t0)` and, for the cavity, the thermal fluctuation function
//! `v(t, t)`. From those the crate reconstructs the diagonal reduced density
//! matrix and derives energy, von Neumann entropy, dynamical temperature,
//! free energy, heat and work along the trajectory.
//!
//! Units throughout: `hbar = k = 1` and the system frequency `omega_s = 1`.
//! Times are in `1/omega_s`, energies in `hbar*omega_s`, temperatures in
//! `hbar*omega_s/k`, entropy in units of `k`.
//!
//! Module map:
//! - [`numerics`]: time grids, quadrature, finite differences and the
//!   product-integration Volterra solver.
//! - [`spectral`]: Ohmic and Lorentzian bath models and their memory kernels.
//! - [`greens`]: `u`, `v` and `A = |u|^2 / (1 + v)` on a time grid.
//! - [`states`]: Fock-ladder and two-level populations, master-equation
//!   coefficients.
//! - [`thermo`]: the thermodynamic trajectory.
//! - [`cli`]: run configuration, presets, single runs, sweeps and file output.

pub mod cli;
pub mod error;
pub mod greens;
pub mod numerics;
pub mod spectral;
pub mod states;
pub mod thermo;

pub use error::{Error, Result};

/// System frequency; every other frequency is measured in units of it.
pub const OMEGA_S: f64 = 1.0;
