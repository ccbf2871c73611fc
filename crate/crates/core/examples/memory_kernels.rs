//! Memory kernels of the Ohmic reservoir: closed forms against direct
//! frequency quadrature.
//!
//! cargo run --release --example memory_kernels

use qthermo::spectral::{
    ohmic_kernel_g, ohmic_kernel_g_quadrature, thermal_kernel_gtilde, thermal_kernel_gtilde_quadrature,
    OhmicBath, ReservoirState,
};

fn main() -> qthermo::Result<()> {
    let bath = OhmicBath::relative(0.01, 5.0)?;
    let reservoir = ReservoirState::new(15.0)?;
    println!("eta = {}, omega_c = {}, kT0 = {}", bath.eta(), bath.omega_c(), reservoir.kt0());
    println!("{:>6} {:>24} {:>10} {:>24} {:>10}", "dt", "g", "|dg|", "g~", "|dg~|");
    for dt in [0.0, 0.1, 0.5, 1.0, 5.0, 20.0] {
        let g = ohmic_kernel_g(&bath, dt);
        let gq = ohmic_kernel_g_quadrature(&bath, dt);
        let gt = thermal_kernel_gtilde(&bath, &reservoir, dt);
        let gtq = thermal_kernel_gtilde_quadrature(&bath, &reservoir, dt);
        println!(
            "{dt:>6.1} {:>24} {:>10.1e} {:>24} {:>10.1e}",
            format!("{:.5e}{:+.5e}i", g.re, g.im),
            (g - gq).norm(),
            format!("{:.5e}{:+.5e}i", gt.re, gt.im),
            (gt - gtq).norm()
        );
    }
    Ok(())
}
