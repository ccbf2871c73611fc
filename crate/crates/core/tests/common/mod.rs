//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use qthermo::greens::GreensTrajectory;
use qthermo::numerics::TimeGrid;
use qthermo::states::master_eq_coefficients;

/// RK4 with step `2h`, sampling the coefficients at grid points `j`, `j+1`, `j+2`.
pub fn rk4_on_grid<F>(y0: Vec<f64>, grid: &TimeGrid, mut rhs: F) -> Vec<Vec<f64>>
where
    F: FnMut(usize, &[f64]) -> Vec<f64>,
{
    let h2 = 2.0 * grid.step();
    let mut out = vec![y0.clone()];
    let mut y = y0;
    let mut j = 0;
    while j + 2 < grid.len() {
        let axpy = |y: &[f64], k: &[f64], s: f64| -> Vec<f64> {
            y.iter().zip(k).map(|(a, b)| a + s * b).collect()
        };
        let k1 = rhs(j, &y);
        let k2 = rhs(j + 1, &axpy(&y, &k1, 0.5 * h2));
        let k3 = rhs(j + 1, &axpy(&y, &k2, 0.5 * h2));
        let k4 = rhs(j + 2, &axpy(&y, &k3, h2));
        for i in 0..y.len() {
            y[i] += h2 / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        j += 2;
        out.push(y.clone());
    }
    out
}

/// Populations from the diagonal master equation truncated at `n_trunc`,
/// driven by the coefficients extracted from `traj`, every second grid point.
pub fn integrate_cavity(traj: &GreensTrajectory, n0: usize, n_trunc: usize) -> Vec<Vec<f64>> {
    let coeffs: Vec<(f64, f64)> = (0..traj.len())
        .map(|j| {
            let c = master_eq_coefficients(traj, j).expect("u stays away from zero");
            (c.gamma, c.gamma_tilde)
        })
        .collect();
    let mut p0 = vec![0.0; n_trunc + 1];
    p0[n0] = 1.0;
    rk4_on_grid(p0, traj.grid(), |j, p| {
        let (g, gt) = coeffs[j];
        (0..=n_trunc)
            .map(|n| {
                let nf = n as f64;
                let up = if n < n_trunc { p[n + 1] } else { 0.0 };
                let down = if n > 0 { p[n - 1] } else { 0.0 };
                2.0 * g * ((nf + 1.0) * up - nf * p[n])
                    + gt * (nf * down + (nf + 1.0) * up - (2.0 * nf + 1.0) * p[n])
            })
            .collect()
    })
}

/// Gibbs (geometric) populations with mean `nbar`, down to `1e-16`.
pub fn gibbs_populations(nbar: f64) -> Vec<f64> {
    let q = nbar / (1.0 + nbar);
    let mut w = 1.0 / (1.0 + nbar);
    let mut out = Vec::new();
    while w > 1e-16 || out.len() < 2 {
        out.push(w);
        w *= q;
        if q == 0.0 {
            break;
        }
    }
    out
}

/// `1 / (exp(1/kT) - 1)` at the system frequency.
pub fn bose_mean(kt: f64) -> f64 {
    1.0 / (1.0 / kt).exp_m1()
}

/// Closed-form entropy of the Gibbs state with mean `nbar`.
pub fn gibbs_entropy(nbar: f64) -> f64 {
    (nbar + 1.0) * (nbar + 1.0).ln() - nbar * nbar.ln()
}

pub fn max_abs_difference(a: &[f64], b: &[f64]) -> f64 {
    (0..a.len().max(b.len()))
        .map(|n| (a.get(n).copied().unwrap_or(0.0) - b.get(n).copied().unwrap_or(0.0)).abs())
        .fold(0.0, f64::max)
}

/// Largest relative deviation of `w` from the Gibbs state with mean `nbar`,
/// over the components where the Gibbs weight exceeds `1e-6`.
pub fn gibbs_relative_deviation(w: &[f64], nbar: f64) -> f64 {
    gibbs_populations(nbar)
        .iter()
        .enumerate()
        .filter(|(_, &g)| g > 1e-6)
        .map(|(n, &g)| (w.get(n).copied().unwrap_or(0.0) / g - 1.0).abs())
        .fold(0.0, f64::max)
}

/// Best Gibbs fit of `w` in the sense of the smallest largest relative
/// deviation: a log-spaced scan of the mean followed by golden-section refinement.
pub fn best_gibbs_fit(w: &[f64]) -> (f64, f64) {
    let f = |ln_nbar: f64| gibbs_relative_deviation(w, ln_nbar.exp());
    let (lo, hi) = ((1e-3f64).ln(), (1e3f64).ln());
    let samples = 2000;
    let mut best = (lo, f(lo));
    for i in 0..=samples {
        let x = lo + (hi - lo) * i as f64 / samples as f64;
        let y = f(x);
        if y < best.1 {
            best = (x, y);
        }
    }
    let width = (hi - lo) / samples as f64;
    let (mut a, mut b) = (best.0 - width, best.0 + width);
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..80 {
        let c = b - ratio * (b - a);
        let d = a + ratio * (b - a);
        if f(c) < f(d) {
            b = d;
        } else {
            a = c;
        }
    }
    let x = 0.5 * (a + b);
    let y = f(x).min(best.1);
    (x.exp(), y)
}
