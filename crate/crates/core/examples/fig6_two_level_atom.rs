//! A two-level atom decaying into a Lorentzian vacuum reservoir. For a broad
//! reservoir (`lambda = 5 gamma0`) the decay is monotone and the entropy peaks
//! at `ln 2` when `p = 1/2`; for a narrow one (`lambda = gamma0/5`) the
//! excitation flows back and forth.
//!
//! cargo run --release --example fig6_two_level_atom

use qthermo::cli::{presets, Simulation};

fn main() -> qthermo::Result<()> {
    for config in [presets::fig6(), presets::fig6_strong()] {
        let sim = Simulation::run(&config)?;
        let grid = *sim.grid();
        let th = sim.thermo();
        println!(
            "\n{}: gamma0 = {}, lambda = {}",
            config.label.as_deref().unwrap_or(""),
            config.gamma0.unwrap(),
            config.lambda.unwrap()
        );
        for &j in th.entropy_maxima().iter().take(4) {
            println!(
                "entropy maximum {:.6} (ln 2 = {:.6}) at t = {:.2}, p = {:.4}",
                th.entropy()[j],
                2f64.ln(),
                grid.time(j),
                th.energy()[j]
            );
        }
        println!("{:>7} {:>9} {:>9} {:>10} {:>9}", "t", "p", "S", "T", "gamma");
        for i in 0..=10 {
            let j = i * (grid.len() - 1) / 10;
            let temp = th.temperature()[j].map_or("-".into(), |x| format!("{x:.4}"));
            let gamma = sim.coefficients()[j].map_or("-".into(), |c| format!("{:.4}", c.gamma));
            println!("{:>7.1} {:>9.5} {:>9.5} {temp:>10} {gamma:>9}", grid.time(j), th.energy()[j], th.entropy()[j]);
        }
    }
    Ok(())
}
