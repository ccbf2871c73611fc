//! Weak coupling to a hot reservoir: the cavity forgets its initial Fock
//! state and relaxes to the Gibbs state at the reservoir temperature.
//!
//! cargo run --release --example fig2_thermalization

use qthermo::cli::{presets, RunConfig, Simulation};

fn main() -> qthermo::Result<()> {
    let kt0: f64 = 15.0;
    let nbar = 1.0 / (1.0 / kt0).exp_m1();
    println!("reservoir kT0 = {kt0}, Bose occupation {nbar:.4}");

    let mut finals = Vec::new();
    for n0 in [1, 5, 10] {
        let config = RunConfig { n0: Some(n0), ..presets::fig2() };
        let sim = Simulation::run(&config)?;
        let th = sim.thermo();
        println!("\nn0 = {n0}");
        println!("{:>8} {:>10} {:>10} {:>10} {:>11}", "t", "E", "S", "T", "F");
        for t in [0.0, 25.0, 50.0, 100.0, 200.0, 400.0, 600.0] {
            let j = (t / sim.grid().step()).round() as usize;
            let fmt = |x: Option<f64>| x.map_or("-".to_string(), |x| format!("{x:.4}"));
            println!(
                "{t:>8.1} {:>10.4} {:>10.4} {:>10} {:>11}",
                th.energy()[j],
                th.entropy()[j],
                fmt(th.temperature()[j]),
                fmt(th.free_energy()[j])
            );
        }
        finals.push(sim.populations_at(sim.last_index())?);
    }

    let gibbs: Vec<f64> = (0..6).map(|n| nbar.powi(n) / (1.0 + nbar).powi(n + 1)).collect();
    println!("\nterminal populations W_0..W_5");
    for (n0, w) in [1, 5, 10].iter().zip(&finals) {
        println!("n0 = {n0:>2}: {:.5?}", &w[..6]);
    }
    println!("Gibbs  : {gibbs:.5?}");
    Ok(())
}
