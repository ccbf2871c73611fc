//! Sweep of the reservoir temperature across the initial system energy
//! `E0 = 5`. Negative-temperature epochs appear only for `kT0 < E0`.
//!
//! cargo run --release --example fig5_phase_boundary_sweep [OUT_DIR]

use std::path::PathBuf;

use qthermo::cli::{presets, run_sweep};

fn main() -> qthermo::Result<()> {
    let out = std::env::args().nth(1).map_or_else(|| PathBuf::from("out"), PathBuf::from);
    let sweep = presets::fig5();
    let window = 10.0 / sweep.base.omega_c.unwrap();
    let (members, path) = run_sweep(&sweep, sweep.worker_count(), &out)?;

    println!("{:>5} {:>9} {:>9}  negative-T epochs after t = {window}", "kT0", "E(end)", "T(end)");
    for (kt0, sim) in &members {
        let last = sim.last_index();
        let epochs = sim.negative_temperature_epochs(window);
        let span = epochs.first().map_or("none".to_string(), |(a, b)| {
            format!("{a:.1}..{b:.1}{}", if epochs.len() > 1 { " ..." } else { "" })
        });
        let t = sim.thermo().temperature()[last].map_or("-".into(), |t| format!("{t:.3}"));
        println!("{kt0:>5.1} {:>9.4} {t:>9}  {span}", sim.thermo().energy()[last]);
    }
    println!("wrote {}", path.display());
    Ok(())
}
