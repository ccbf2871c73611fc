//! Second-order product integration for the convolution Volterra equation
//!
//! ```text
//! du/dt = -i*omega*u(t) - int_{t0}^{t} g(t - tau) u(tau) dtau,   u(t0) = 1.
//! ```
//!
//! The free rotation is removed first: with `w(t) = exp(i*omega*(t - t0)) u(t)`
//! the equation becomes `dw/dt = -int k(t - tau) w(tau) dtau` with the
//! modulated kernel `k(s) = g(s) exp(i*omega*s)`. Both the outer time step and
//! the memory integral use trapezoid weights. The step is implicit in `w_j`
//! only through the `k(0)` end weight, and the equation is linear, so the
//! trapezoid corrector is solved in closed form instead of being iterated.

use num_complex::Complex64;

use super::{ComplexSeries, TimeGrid};
use crate::{Error, Result};

/// Solves the convolution Volterra equation on `grid`. The kernel is sampled
/// once per grid offset; each step reuses the whole history, O(N^2) in total.
pub fn solve_volterra<K>(kernel: K, omega: f64, grid: &TimeGrid) -> Result<ComplexSeries>
where
    K: Fn(f64) -> Complex64,
{
    let n = grid.n_steps();
    let h = grid.step();

    let mut k = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let s = m as f64 * h;
        let g = kernel(s);
        if !(g.re.is_finite() && g.im.is_finite()) {
            return Err(Error::NonFiniteKernel { dt: s });
        }
        k.push(g * Complex64::cis(omega * s));
    }

    let mut w = Vec::with_capacity(n + 1);
    w.push(Complex64::new(1.0, 0.0));
    let denom = Complex64::new(1.0, 0.0) + k[0] * (0.25 * h * h);
    // memory integral at the previous step; zero at t0
    let mut memory_prev = Complex64::new(0.0, 0.0);

    for j in 1..=n {
        let history: Complex64 = k[1..j]
            .iter()
            .rev()
            .zip(&w[1..j])
            .map(|(kk, ww)| kk * ww)
            .sum();
        let known = (k[j] * (0.5 * w[0]) + history) * h;
        let wj = (w[j - 1] - (memory_prev + known) * (0.5 * h)) / denom;
        if !(wj.re.is_finite() && wj.im.is_finite()) {
            return Err(Error::numerical(j, "non-finite propagator value"));
        }
        memory_prev = known + k[0] * (0.5 * h) * wj;
        w.push(wj);
    }

    let u = w
        .into_iter()
        .enumerate()
        .map(|(j, wj)| wj * Complex64::cis(-omega * j as f64 * h))
        .collect();
    ComplexSeries::new(*grid, u)
}
