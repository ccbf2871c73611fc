//! Time grids, quadrature rules, finite differences and the Volterra solver.

mod diff;
mod grid;
mod quadrature;
mod volterra;

pub use diff::{derivative, derivative_at};
pub use grid::{ComplexSeries, RealSeries, Series, SeriesValue, TimeGrid};
pub use quadrature::{gauss_kronrod_adaptive, simpson, trapezoid_integrate, QuadratureOptions};
pub use volterra::solve_volterra;
