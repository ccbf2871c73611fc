//! Reduced density matrices reconstructed from Green's-function trajectories.
//!
//! A cavity prepared in the Fock state `|n0>` stays diagonal; its populations
//! are a closed-form function of `A = |u|^2 / (1 + v)` and `v`. A two-level
//! atom prepared excited in a vacuum reservoir has excited population `|u|^2`.

use num_complex::Complex64;

use crate::greens::GreensTrajectory;
use crate::numerics::{derivative_at, ComplexSeries};
use crate::{Error, Result};

/// Below this `v` the populations use the exact vacuum (binomial) limit.
pub const VACUUM_V_THRESHOLD: f64 = 1e-12;

/// Neglected probability beyond the truncation.
pub const TAIL_TOLERANCE: f64 = 1e-12;

pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// Coefficients are not extracted where `|u|` is below this floor.
pub const U_FLOOR: f64 = 1e-8;

/// Allowed overshoot of `|u|` above one before a two-level run is rejected.
pub const TLS_CLAMP_TOLERANCE: f64 = 1e-6;

/// Fock-ladder populations `W_n`, `n = 0..=n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct CavityState {
    pub time: f64,
    pub n0: u32,
    populations: Vec<f64>,
}

impl CavityState {
    pub fn populations(&self) -> &[f64] {
        &self.populations
    }

    pub fn n_max(&self) -> usize {
        self.populations.len() - 1
    }

    pub fn total_probability(&self) -> f64 {
        self.populations.iter().sum()
    }
}

/// Diagonal two-level state `{p, 1 - p}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TlsState {
    pub time: f64,
    pub p_excited: f64,
}

/// Renormalized frequency, dissipation and fluctuation coefficients of the
/// exact master equation at one grid time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MasterEqCoefficients {
    pub time: f64,
    pub omega_renorm: f64,
    pub gamma: f64,
    pub gamma_tilde: f64,
}

fn ln_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(0.0);
    let mut acc = 0.0;
    for k in 1..=n {
        acc += (k as f64).ln();
        out.push(acc);
    }
    out
}

fn ln_binomial(ln_fact: &[f64], n: usize, k: usize) -> f64 {
    ln_fact[n] - ln_fact[k] - ln_fact[n - k]
}

/// `k * ln(x)` with `0 * ln(0) = 0`.
fn xlogy(k: usize, ln_x: f64) -> f64 {
    if k == 0 {
        0.0
    } else {
        k as f64 * ln_x
    }
}

/// Populations of the cavity at grid index `time_index` for initial Fock state `n0`.
///
/// ```text
/// W_n = v^n / (1+v)^(n+1) (1-A)^n0 sum_k C(n0,k) C(n,k) [A / (v (1-A))]^k
/// ```
///
/// Each summand is evaluated in log space and combined with log-sum-exp. The
/// truncation starts at `n0 + ceil(25 (v + 1))` and grows until the tail bound
/// `W_N r / (1 - r)`, with `r = v/(1+v) * (N+1)/(N+1-n0)` bounding the ratio of
/// consecutive populations past `n0`, is below `1e-12`.
pub fn cavity_populations(traj: &GreensTrajectory, n0: u32, time_index: usize) -> Result<CavityState> {
    if time_index >= traj.len() {
        return Err(Error::Contract(format!(
            "time index {time_index} beyond trajectory of {} points",
            traj.len()
        )));
    }
    let time = traj.grid().time(time_index);
    let v = traj.v().get(time_index);
    let a = traj.a().get(time_index);
    let n0u = n0 as usize;

    let populations = if v < VACUUM_V_THRESHOLD {
        let ln_fact = ln_factorials(n0u);
        (0..=n0u)
            .map(|n| {
                let ln_w = ln_binomial(&ln_fact, n0u, n)
                    + xlogy(n, a.ln())
                    + xlogy(n0u - n, (-a).ln_1p());
                ln_w.exp()
            })
            .collect()
    } else {
        if a >= 1.0 - 1e-12 {
            return Err(Error::numerical(
                time_index,
                format!("A = {a} is one while v = {v:e} > 0"),
            ));
        }
        thermal_populations(n0u, a, v, time_index)?
    };

    let state = CavityState {
        time,
        n0,
        populations,
    };
    let total = state.total_probability();
    if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(Error::numerical(
            time_index,
            format!("cavity populations sum to {total}"),
        ));
    }
    Ok(state)
}

fn thermal_populations(n0: usize, a: f64, v: f64, step: usize) -> Result<Vec<f64>> {
    let ln_v = v.ln();
    let ln_1pv = v.ln_1p();
    let ln_a = a.ln();
    let ln_1ma = (-a).ln_1p();
    let ratio = v / (1.0 + v);

    let mut n_max = n0 + (25.0 * (v + 1.0)).ceil() as usize;
    let mut ln_fact = ln_factorials(n_max);
    let mut populations = Vec::with_capacity(n_max + 1);
    let mut terms = Vec::with_capacity(n0 + 1);

    let mut n = 0;
    loop {
        while n <= n_max {
            terms.clear();
            for k in 0..=n0.min(n) {
                terms.push(
                    ln_binomial(&ln_fact, n0, k) + ln_binomial(&ln_fact, n, k)
                        + xlogy(n - k, ln_v)
                        + xlogy(k, ln_a)
                        + xlogy(n0 - k, ln_1ma),
                );
            }
            let peak = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let ln_sum = if peak == f64::NEG_INFINITY {
                peak
            } else {
                peak + terms.iter().map(|t| (t - peak).exp()).sum::<f64>().ln()
            };
            populations.push((ln_sum - (n + 1) as f64 * ln_1pv).exp());
            n += 1;
        }
        let last = n_max as f64;
        let r = if n_max >= n0 {
            ratio * (last + 1.0) / (last + 1.0 - n0 as f64)
        } else {
            1.0
        };
        let w_last = populations[n_max];
        if r < 1.0 && w_last * r / (1.0 - r) < TAIL_TOLERANCE {
            break;
        }
        if n_max > 50_000_000 {
            return Err(Error::numerical(step, "population truncation did not converge"));
        }
        n_max += n_max / 2 + 16;
        ln_fact = ln_factorials(n_max);
    }
    Ok(populations)
}

/// `sum_n n W_n`.
pub fn mean_photon_number(state: &CavityState) -> f64 {
    state
        .populations
        .iter()
        .enumerate()
        .map(|(n, w)| n as f64 * w)
        .sum()
}

/// `|sum_n n W_n - (n0 |u|^2 + v)|` at the state's grid index.
pub fn moment_identity_residual(state: &CavityState, traj: &GreensTrajectory, time_index: usize) -> f64 {
    let u2 = traj.u().get(time_index).norm_sqr();
    let v = traj.v().get(time_index);
    (mean_photon_number(state) - (state.n0 as f64 * u2 + v)).abs()
}

/// Excited population of the initially excited atom, `p = |u|^2`.
///
/// Returns the state and whether `p` had to be clamped into `[0, 1]`.
pub fn tls_population(u: &ComplexSeries, time_index: usize) -> Result<(TlsState, bool)> {
    if time_index >= u.len() {
        return Err(Error::Contract(format!(
            "time index {time_index} beyond series of {} points",
            u.len()
        )));
    }
    let magnitude = u.get(time_index).norm();
    if magnitude > 1.0 + TLS_CLAMP_TOLERANCE {
        return Err(Error::numerical(
            time_index,
            format!("|u| = {magnitude} exceeds one"),
        ));
    }
    let p = magnitude * magnitude;
    let clamped = p > 1.0;
    Ok((
        TlsState {
            time: u.grid().time(time_index),
            p_excited: p.min(1.0),
        },
        clamped,
    ))
}

/// Master-equation coefficients from finite differences of `u` and `v`:
/// `omega' = -Im(u'/u)`, `gamma = -Re(u'/u)`, `gamma~ = v' - 2 v Re(u'/u)`.
///
/// `None` where `|u| < U_FLOOR`, since `u'/u` is meaningless at zeros of `u`.
pub fn master_eq_coefficients(traj: &GreensTrajectory, time_index: usize) -> Option<MasterEqCoefficients> {
    let u = traj.u();
    let uj = u.get(time_index);
    if uj.norm() < U_FLOOR {
        return None;
    }
    let h = traj.grid().step();
    let du: Complex64 = derivative_at(u.values(), h, time_index);
    let dv = derivative_at(traj.v().values(), h, time_index);
    let rate = du / uj;
    let v = traj.v().get(time_index);
    Some(MasterEqCoefficients {
        time: traj.grid().time(time_index),
        omega_renorm: -rate.im,
        gamma: -rate.re,
        gamma_tilde: dv - 2.0 * v * rate.re,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::greens::{assemble_trajectory, cavity_trajectory, compute_u_tls_analytic};
    use crate::numerics::{RealSeries, TimeGrid};
    use crate::spectral::{LorentzianBath, OhmicBath, ReservoirState};

    /// Trajectory with prescribed `|u|^2` and `v` at index 1.
    fn point_trajectory(u2: f64, v: f64) -> GreensTrajectory {
        let grid = TimeGrid::new(0.0, 1.0, 2).unwrap();
        let u = ComplexSeries::new(
            grid,
            vec![Complex64::new(1.0, 0.0), Complex64::new(u2.sqrt(), 0.0), Complex64::new(u2.sqrt(), 0.0)],
        )
        .unwrap();
        let v = RealSeries::new(grid, vec![0.0, v, v]).unwrap();
        assemble_trajectory(u, v).unwrap()
    }

    #[test]
    fn initial_state_is_the_fock_state() {
        let traj = point_trajectory(0.5, 0.0);
        for n0 in [0, 1, 5, 12] {
            let s = cavity_populations(&traj, n0, 0).unwrap();
            for (n, w) in s.populations().iter().enumerate() {
                assert_eq!(*w, if n == n0 as usize { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn vacuum_limit_is_binomial() {
        let traj = point_trajectory(0.5, 0.0);
        let s = cavity_populations(&traj, 5, 1).unwrap();
        let w = s.populations();
        assert!((w[0] - 1.0 / 32.0).abs() < 1e-15);
        assert!((w[2] - 10.0 / 32.0).abs() < 1e-15);
        assert_eq!(s.n_max(), 5);
    }

    #[test]
    fn general_formula_approaches_binomial_as_v_vanishes() {
        let a = point_trajectory(0.5, 1e-9);
        let s = cavity_populations(&a, 5, 1).unwrap();
        let w = s.populations();
        assert!((w[0] - 1.0 / 32.0).abs() < 1e-7);
        assert!((w[2] - 10.0 / 32.0).abs() < 1e-7);
    }

    #[test]
    fn fully_decayed_state_is_gibbs() {
        let nbar = 14.5;
        let traj = point_trajectory(0.0, nbar);
        let s = cavity_populations(&traj, 5, 1).unwrap();
        let mut gibbs = 1.0 / (1.0 + nbar);
        for w in s.populations() {
            assert!((w - gibbs).abs() <= 1e-11 * gibbs);
            gibbs *= nbar / (1.0 + nbar);
        }
        assert!((mean_photon_number(&s) - nbar).abs() < 1e-9);
    }

    #[test]
    fn inconsistent_trajectory_is_rejected() {
        // A = 1 with v > 0 cannot come out of the dynamics
        let grid = TimeGrid::new(0.0, 1.0, 2).unwrap();
        let u = ComplexSeries::new(grid, vec![Complex64::new(1.0, 0.0); 3]).unwrap();
        let v = RealSeries::new(grid, vec![0.0, 0.0, 0.0]).unwrap();
        let traj = assemble_trajectory(u, v).unwrap();
        assert!(cavity_populations(&traj, 2, 1).is_ok());
        let traj = point_trajectory(1.0 + 1e-4, 1e-4);
        assert!(cavity_populations(&traj, 2, 1).is_err());
    }

    #[test]
    fn populations_on_a_thermal_run_satisfy_identities() {
        let bath = OhmicBath::relative(0.3, 5.0).unwrap();
        let res = ReservoirState::new(20.0).unwrap();
        let grid = TimeGrid::new(0.0, 10.0, 1000).unwrap();
        let traj = cavity_trajectory(&bath, &res, &grid).unwrap();
        for j in (0..=1000).step_by(50) {
            let s = cavity_populations(&traj, 5, j).unwrap();
            assert!((s.total_probability() - 1.0).abs() < 1e-9);
            assert!(s.populations().iter().all(|&w| w >= 0.0));
            assert!(moment_identity_residual(&s, &traj, j) < 1e-8, "j {j}");
        }
    }

    #[test]
    fn tls_population_is_u_squared() {
        let bath = LorentzianBath::resonant(0.2, 1.0).unwrap();
        let grid = TimeGrid::new(0.0, 5.0, 500).unwrap();
        let u = compute_u_tls_analytic(&bath, &grid).unwrap();
        let (s0, c0) = tls_population(&u, 0).unwrap();
        assert_eq!((s0.p_excited, c0), (1.0, false));
        let (s, _) = tls_population(&u, 500).unwrap();
        let gamma = 15f64.sqrt() * 0.2;
        let direct = (-2.5f64).exp() * ((gamma * 2.5).cosh() + (gamma * 2.5).sinh() / gamma);
        assert!((s.p_excited - direct * direct).abs() < 1e-13);
        assert!((s.p_excited - 0.4238).abs() < 1e-3);
    }

    #[test]
    fn tls_population_rejects_growing_amplitude() {
        let grid = TimeGrid::new(0.0, 1.0, 2).unwrap();
        let u = ComplexSeries::new(
            grid,
            vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(1.0 + 1e-7, 0.0),
                Complex64::new(1.01, 0.0),
            ],
        )
        .unwrap();
        let (s, clamped) = tls_population(&u, 1).unwrap();
        assert!(clamped && s.p_excited == 1.0);
        assert!(tls_population(&u, 2).is_err());
    }

    #[test]
    fn free_evolution_has_bare_coefficients() {
        let grid = TimeGrid::new(0.0, 10.0, 1000).unwrap();
        let u: Vec<Complex64> = grid.times().map(|t| Complex64::cis(-t)).collect();
        let u = ComplexSeries::new(grid, u).unwrap();
        let traj = assemble_trajectory(u, RealSeries::zeros(grid)).unwrap();
        for j in [0, 1, 500, 1000] {
            let c = master_eq_coefficients(&traj, j).unwrap();
            assert!((c.omega_renorm - 1.0).abs() < 1e-4);
            assert!(c.gamma.abs() < 1e-4 && c.gamma_tilde.abs() < 1e-12);
        }
    }

    #[test]
    fn coefficients_are_undefined_at_zeros_of_u() {
        let grid = TimeGrid::new(0.0, 1.0, 2).unwrap();
        let u = ComplexSeries::new(
            grid,
            vec![Complex64::new(1.0, 0.0), Complex64::new(1e-9, 0.0), Complex64::new(0.5, 0.0)],
        )
        .unwrap();
        let traj = assemble_trajectory(u, RealSeries::zeros(grid)).unwrap();
        assert!(master_eq_coefficients(&traj, 1).is_none());
        assert!(master_eq_coefficients(&traj, 2).is_some());
    }
}
