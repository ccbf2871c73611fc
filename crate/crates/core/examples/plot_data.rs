//! Runs a short vacuum-reservoir simulation, writes its trajectory file and
//! splits it into per-quantity plot files. The temperature file has a blank
//! line at the entropy maximum, so plotting tools draw the jump as a break.
//!
//! cargo run --release --example plot_data [OUT_DIR]

use std::path::PathBuf;

use qthermo::cli::{emit_plot_data, run_single, RunConfig};

fn main() -> qthermo::Result<()> {
    let out = std::env::args().nth(1).map_or_else(|| PathBuf::from("out/plot_data"), PathBuf::from);
    let config = RunConfig::cavity(0.01, 5.0, 0.0, 5, 150.0)
        .with_step(0.02)
        .with_stride(25)
        .with_label("vacuum");
    let (_, artifacts) = run_single(&config, &out)?;
    println!("wrote {}", artifacts.trajectory.display());
    println!("wrote {}", artifacts.report.display());
    let quantities = ["energy", "entropy", "temperature", "free_energy"].map(String::from);
    for path in emit_plot_data(&artifacts.trajectory, &quantities, None)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
