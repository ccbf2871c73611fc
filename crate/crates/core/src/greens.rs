//! Green's-function trajectories.
//!
//! `u(t, t0)` solves the convolution Volterra equation with the bath's memory
//! kernel. For the cavity, `v(t, t)` is the double integral of `u g~ u*` over
//! `[t0, t]^2`; because the kernel is convolutional, `u(t, tau) = u(t - tau, t0)`,
//! which turns `v` into a quadratic form in the history of `u`.

use num_complex::Complex64;

use crate::numerics::{solve_volterra, ComplexSeries, RealSeries, TimeGrid};
use crate::spectral::{thermal_kernel_gtilde, LorentzianBath, OhmicBath, ReservoirState};
use crate::{Error, Result, OMEGA_S};

/// Relative tolerance on the imaginary part left over in `v`.
pub const V_IMAG_TOLERANCE: f64 = 1e-8;

/// Tolerance on `A` exceeding one before the trajectory is rejected.
pub const A_UPPER_TOLERANCE: f64 = 1e-9;

/// `u`, `v` and `A = |u|^2 / (1 + v)` on a common grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GreensTrajectory {
    u: ComplexSeries,
    v: RealSeries,
    a: RealSeries,
}

impl GreensTrajectory {
    pub fn grid(&self) -> &TimeGrid {
        self.u.grid()
    }

    pub fn u(&self) -> &ComplexSeries {
        &self.u
    }

    pub fn v(&self) -> &RealSeries {
        &self.v
    }

    pub fn a(&self) -> &RealSeries {
        &self.a
    }

    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }
}

pub fn compute_u_cavity(bath: &OhmicBath, grid: &TimeGrid) -> Result<ComplexSeries> {
    solve_volterra(|dt| bath.kernel_g(dt), OMEGA_S, grid)
}

/// Thermal fluctuation function `v(t, t)` of the cavity at every grid point.
pub fn compute_v_cavity(
    u: &ComplexSeries,
    bath: &OhmicBath,
    reservoir: &ReservoirState,
    grid: &TimeGrid,
) -> Result<RealSeries> {
    if u.grid() != grid {
        return Err(Error::Contract("u was computed on a different grid".into()));
    }
    if reservoir.is_vacuum() {
        return Ok(RealSeries::zeros(*grid));
    }
    compute_v(u, |dt| thermal_kernel_gtilde(bath, reservoir, dt))
}

/// `v(t_j) = int int u(s1) g~(s2 - s1) u*(s2) ds1 ds2` over `[0, t_j - t0]^2`
/// with trapezoid weights in both directions, for every `j`.
///
/// Write the double sum as the quadratic form `Q(c) = sum_{i,k} c_i c_k* G_{k-i}`
/// with `c` the trapezoid-weighted samples of `u`. Moving from `t_{j-1}` to
/// `t_j` changes only `c_{j-1}` and `c_j`, so `Q` is updated with two O(j)
/// cross sums and the whole series costs O(N^2). The positive and negative
/// offsets of `g~` are tabulated separately, so the imaginary part of `Q`
/// measures how far the tabulated kernel is from Hermitian.
pub fn compute_v<G>(u: &ComplexSeries, gtilde: G) -> Result<RealSeries>
where
    G: Fn(f64) -> Complex64,
{
    let grid = *u.grid();
    let n = grid.n_steps();
    let h = grid.step();
    let a = u.values();

    let tabulate = |sign: f64| -> Result<Vec<Complex64>> {
        (0..=n)
            .map(|m| {
                let dt = sign * m as f64 * h;
                let g = gtilde(dt);
                if g.re.is_finite() && g.im.is_finite() {
                    Ok(g)
                } else {
                    Err(Error::NonFiniteKernel { dt })
                }
            })
            .collect()
    };
    let g_pos = tabulate(1.0)?;
    let g_neg = tabulate(-1.0)?;

    let mut v = Vec::with_capacity(n + 1);
    v.push(0.0);

    let c0 = a[0] * 0.5;
    let c1 = a[1] * 0.5;
    let mut q = (c0.norm_sqr() + c1.norm_sqr()) * g_pos[0]
        + c0 * c1.conj() * g_pos[1]
        + c1 * c0.conj() * g_neg[1];
    let mut c = vec![c0, c1];
    v.push(checked_v(q, h, 1)?);

    // cross sums against the newest index, carried over from the previous step
    let mut s_new = c0 * g_pos[1] + c1 * g_pos[0];
    let mut t_new = c0.conj() * g_neg[1] + c1.conj() * g_neg[0];

    for j in 2..=n {
        let d_prev = a[j - 1] * 0.5;
        let d_new = a[j] * 0.5;

        // sum_i c_i G_{j-1-i} is last step's newest-index sum
        let s_prev = s_new;
        let t_prev = t_new;
        s_new = Complex64::default();
        t_new = Complex64::default();
        for (i, ci) in c.iter().enumerate() {
            s_new += ci * g_pos[j - i];
            t_new += ci.conj() * g_neg[j - i];
        }
        let cross = d_prev.conj() * s_prev + d_new.conj() * s_new + d_prev * t_prev + d_new * t_new;
        let local = (d_prev.norm_sqr() + d_new.norm_sqr()) * g_pos[0]
            + d_prev * d_new.conj() * g_pos[1]
            + d_new * d_prev.conj() * g_neg[1];
        q += cross + local;

        c[j - 1] += d_prev;
        c.push(d_new);
        // bring the newest-index sums up to date with the modified entries
        s_new += d_prev * g_pos[1] + d_new * g_pos[0];
        t_new += d_prev.conj() * g_neg[1] + d_new.conj() * g_neg[0];
        v.push(checked_v(q, h, j)?);
    }
    RealSeries::new(grid, v)
}

fn checked_v(q: Complex64, h: f64, step: usize) -> Result<f64> {
    let value = q.re * h * h;
    let residue = q.im.abs() * h * h;
    if !value.is_finite() {
        return Err(Error::numerical(step, "non-finite fluctuation function"));
    }
    if residue > V_IMAG_TOLERANCE * (1.0 + value.abs()) {
        return Err(Error::numerical(
            step,
            format!("fluctuation function has imaginary residue {residue:e}"),
        ));
    }
    if value < -1e-12 {
        return Err(Error::numerical(
            step,
            format!("fluctuation function is negative ({value:e})"),
        ));
    }
    Ok(value.max(0.0))
}

/// Closed-form propagator of the resonant Lorentzian bath,
/// `u = exp((-i omega_s - lambda/2) t) [cosh(Gamma t/2) + (lambda/Gamma) sinh(Gamma t/2)]`.
///
/// Evaluated as `((1 + lambda/Gamma) e^{(Gamma - lambda) t/2} + (1 - lambda/Gamma) e^{-(Gamma + lambda) t/2}) / 2`
/// so nothing overflows at long times. `Gamma -> 0` uses the limit `1 + lambda t / 2`.
pub fn compute_u_tls_analytic(bath: &LorentzianBath, grid: &TimeGrid) -> Result<ComplexSeries> {
    if (bath.omega0() - OMEGA_S).abs() > 1e-12 {
        return Err(Error::Contract(format!(
            "closed-form propagator requires a resonant bath (omega0 = {}, omega_s = {OMEGA_S})",
            bath.omega0()
        )));
    }
    let lambda = bath.lambda();
    let gamma = bath.gamma_complex();
    let degenerate = gamma.norm() < 1e-8 * lambda;
    let values = grid
        .times()
        .map(|t| {
            let tau = t - grid.t0();
            let envelope = if degenerate {
                Complex64::new((1.0 + 0.5 * lambda * tau) * (-0.5 * lambda * tau).exp(), 0.0)
            } else {
                let ratio = Complex64::new(lambda, 0.0) / gamma;
                let grow = ((gamma - lambda) * (0.5 * tau)).exp();
                let fall = ((-gamma - lambda) * (0.5 * tau)).exp();
                ((ratio + 1.0) * grow + (-ratio + 1.0) * fall) * 0.5
            };
            envelope * Complex64::cis(-OMEGA_S * tau)
        })
        .collect();
    ComplexSeries::new(*grid, values)
}

/// Same propagator by solving the Volterra equation with the Lorentzian kernel.
pub fn compute_u_tls_volterra(bath: &LorentzianBath, grid: &TimeGrid) -> Result<ComplexSeries> {
    solve_volterra(|dt| bath.kernel_f(dt), OMEGA_S, grid)
}

/// Pointwise `A = |u|^2 / (1 + v)`.
pub fn assemble_trajectory(u: ComplexSeries, v: RealSeries) -> Result<GreensTrajectory> {
    if u.grid() != v.grid() {
        return Err(Error::Contract("u and v live on different grids".into()));
    }
    if (u.get(0) - Complex64::new(1.0, 0.0)).norm() > 1e-12 || v.get(0) != 0.0 {
        return Err(Error::Contract(
            "trajectory must start from u = 1, v = 0".into(),
        ));
    }
    let mut a = Vec::with_capacity(u.len());
    for (j, (uj, &vj)) in u.values().iter().zip(v.values()).enumerate() {
        if vj < 0.0 {
            return Err(Error::numerical(j, format!("negative v = {vj:e}")));
        }
        let aj = uj.norm_sqr() / (1.0 + vj);
        if !(0.0..=1.0 + A_UPPER_TOLERANCE).contains(&aj) {
            return Err(Error::numerical(
                j,
                format!("A = {aj} outside [0, 1]; u and v are inconsistent"),
            ));
        }
        a.push(aj.min(1.0));
    }
    let a = RealSeries::new(*u.grid(), a)?;
    Ok(GreensTrajectory { u, v, a })
}

/// Convenience: full cavity trajectory.
pub fn cavity_trajectory(
    bath: &OhmicBath,
    reservoir: &ReservoirState,
    grid: &TimeGrid,
) -> Result<GreensTrajectory> {
    let u = compute_u_cavity(bath, grid)?;
    let v = compute_v_cavity(&u, bath, reservoir, grid)?;
    assemble_trajectory(u, v)
}

/// Two-level trajectory in a vacuum reservoir (`v = 0`).
pub fn tls_trajectory(u: ComplexSeries) -> Result<GreensTrajectory> {
    let v = RealSeries::zeros(*u.grid());
    assemble_trajectory(u, v)
}
