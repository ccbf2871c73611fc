//! The populations reconstructed from Green's functions must agree with a
//! direct integration of the exact master equation driven by the extracted
//! coefficients.

mod common;

use common::{integrate_cavity, rk4_on_grid};
use qthermo::greens::{cavity_trajectory, compute_u_tls_analytic, tls_trajectory};
use qthermo::numerics::TimeGrid;
use qthermo::spectral::{LorentzianBath, OhmicBath, ReservoirState};
use qthermo::states::{cavity_populations, master_eq_coefficients, tls_population};

#[test]
fn tls_population_matches_integrated_decay_law() {
    let bath = LorentzianBath::resonant(0.2, 1.0).unwrap();
    let grid = TimeGrid::with_step(0.0, 25.0, 0.002).unwrap();
    let u = compute_u_tls_analytic(&bath, &grid).unwrap();
    let traj = tls_trajectory(u.clone()).unwrap();
    let gamma: Vec<f64> = (0..grid.len())
        .map(|j| master_eq_coefficients(&traj, j).unwrap().gamma)
        .collect();
    let p = rk4_on_grid(vec![1.0], &grid, |j, y| vec![-2.0 * gamma[j] * y[0]]);
    let mut worst = 0.0f64;
    for (i, y) in p.iter().enumerate() {
        let (state, _) = tls_population(&u, 2 * i).unwrap();
        worst = worst.max((y[0] - state.p_excited).abs());
    }
    assert!(worst < 1e-6, "worst deviation {worst:e}");
}

#[test]
fn cavity_populations_match_master_equation() {
    let bath = OhmicBath::relative(0.3, 5.0).unwrap();
    let res = ReservoirState::new(2.0).unwrap();
    let grid = TimeGrid::with_step(0.0, 20.0, 0.002).unwrap();
    let traj = cavity_trajectory(&bath, &res, &grid).unwrap();
    for n0 in 0..=3usize {
        let me = integrate_cavity(&traj, n0, 40);
        let mut worst = 0.0f64;
        for (i, p) in me.iter().enumerate() {
            let exact = cavity_populations(&traj, n0 as u32, 2 * i).unwrap();
            for (n, pn) in p.iter().enumerate() {
                let w = exact.populations().get(n).copied().unwrap_or(0.0);
                worst = worst.max((pn - w).abs());
            }
        }
        assert!(worst < 1e-5, "n0 {n0}: worst deviation {worst:e}");
    }
}
