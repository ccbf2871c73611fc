//! A Fock state decaying into a vacuum (or a cold) reservoir. The entropy
//! rises, peaks and falls back, so the dynamical temperature starts
//! negative, jumps through infinity at the entropy maximum and ends positive.
//!
//! cargo run --release --example fig4_vacuum_negative_temperature

use qthermo::cli::{presets, Simulation};

fn main() -> qthermo::Result<()> {
    for config in [presets::fig4(), presets::fig4_thermal()] {
        let sim = Simulation::run(&config)?;
        let grid = *sim.grid();
        let th = sim.thermo();
        println!("\n{} (kT0 = {})", config.label.as_deref().unwrap_or(""), config.kt0);
        for &j in &th.entropy_maxima() {
            println!("entropy maximum S = {:.4} at t = {:.2}", th.entropy()[j], grid.time(j));
        }
        for band in th.singular_bands() {
            println!("temperature undefined on t in [{:.2}, {:.2}]", grid.time(band.start), grid.time(band.end));
        }
        for jump in th.band_discontinuities() {
            println!(
                "across the band: dE = {:.4}, dF = {}",
                jump.delta_energy,
                jump.delta_free_energy.map_or("-".into(), |f| format!("{f:.2}"))
            );
        }
        println!("{:>8} {:>10} {:>10} {:>12}", "t", "E", "S", "T");
        for t in [5.0, 20.0, 50.0, 65.0, 75.0, 150.0, 300.0, 600.0, 1200.0] {
            let j = (t / grid.step()).round() as usize;
            if j < grid.len() {
                let temp = th.temperature()[j].map_or("-".into(), |x| format!("{x:.5}"));
                println!("{t:>8.1} {:>10.5} {:>10.5} {temp:>12}", th.energy()[j], th.entropy()[j]);
            }
        }
    }
    Ok(())
}
