//! Increasing the coupling: intermediate couplings overheat the cavity
//! above the reservoir temperature, and past the bound-state threshold
//! `eta_c = 1/omega_c` the cavity never thermalizes.
//!
//! cargo run --release --example fig3_strong_coupling

use qthermo::cli::{RunConfig, Simulation};

fn main() -> qthermo::Result<()> {
    println!("{:>6} {:>6} {:>9} {:>9} {:>9} {:>10} {:>10}", "eta", "bound", "|u(100)|", "E_max", "E(100)", "T(25)", "T(100)");
    for eta in [0.1, 0.3, 0.4, 1.3, 1.5] {
        let config = RunConfig::cavity(eta, 5.0, 20.0, 5, 100.0);
        let sim = Simulation::run(&config)?;
        let th = sim.thermo();
        let last = sim.last_index();
        let at = |t: f64| th.temperature()[(t / sim.grid().step()).round() as usize];
        let fmt = |x: Option<f64>| x.map_or("-".to_string(), |x| format!("{x:.3}"));
        let bound = match sim.model() {
            qthermo::cli::Model::Cavity { bath, .. } => bath.has_bound_state(),
            _ => unreachable!(),
        };
        println!(
            "{eta:>6.1} {bound:>6} {:>9.4} {:>9.3} {:>9.3} {:>10} {:>10}",
            sim.greens().u().get(last).norm(),
            th.energy().iter().copied().fold(0.0, f64::max),
            th.energy()[last],
            fmt(at(25.0)),
            fmt(at(100.0)),
        );
    }
    Ok(())
}
