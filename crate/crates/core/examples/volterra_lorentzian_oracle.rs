//! The product-integration Volterra solver against the closed-form
//! propagator of the Lorentzian reservoir, with the observed order of
//! convergence.
//!
//! cargo run --release --example volterra_lorentzian_oracle

use qthermo::greens::{compute_u_tls_analytic, compute_u_tls_volterra};
use qthermo::numerics::TimeGrid;
use qthermo::spectral::LorentzianBath;

fn main() -> qthermo::Result<()> {
    let gamma0 = 0.2;
    for lambda in [5.0 * gamma0, gamma0 / 5.0] {
        let bath = LorentzianBath::resonant(gamma0, lambda)?;
        println!("\ngamma0 = {gamma0}, lambda = {lambda}");
        println!("{:>12} {:>12} {:>7}", "h gamma0", "max error", "order");
        let mut previous: Option<(f64, f64)> = None;
        for scale in [0.04, 0.02, 0.01, 0.005, 0.002] {
            let grid = TimeGrid::with_step(0.0, 10.0 / gamma0, scale / gamma0)?;
            let exact = compute_u_tls_analytic(&bath, &grid)?;
            let numeric = compute_u_tls_volterra(&bath, &grid)?;
            let err = exact
                .values()
                .iter()
                .zip(numeric.values())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            let order = previous.map_or("".into(), |(s, e)| format!("{:.3}", (e / err).ln() / (s / scale).ln()));
            println!("{scale:>12} {err:>12.3e} {order:>7}");
            previous = Some((scale, err));
        }
    }
    Ok(())
}

