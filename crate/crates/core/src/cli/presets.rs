//! Named configurations reproducing the standard parameter sets.
//!
//! Horizons are long enough for each run to reach its steady state: with
//! `eta = 0.01 eta_c` the cavity relaxes at a rate of about `0.01 omega_s`.

use super::config::{RunConfig, SweepConfig, SweepKey, SCHEMA_VERSION};

pub const RUN_PRESETS: &[&str] = &["fig2", "fig3", "fig4", "fig4-thermal", "fig6", "fig6-strong"];
pub const SWEEP_PRESETS: &[&str] = &["fig5"];

/// Weak coupling, thermal reservoir hotter than the initial Fock state.
pub fn fig2() -> RunConfig {
    RunConfig::cavity(0.01, 5.0, 15.0, 5, 600.0)
        .with_step(0.02)
        .with_stride(50)
        .with_label("fig2")
}

/// Coupling beyond the bound-state threshold.
pub fn fig3() -> RunConfig {
    RunConfig::cavity(1.5, 5.0, 20.0, 5, 100.0)
        .with_step(0.01)
        .with_stride(10)
        .with_label("fig3")
}

/// Weak coupling to a vacuum reservoir.
pub fn fig4() -> RunConfig {
    RunConfig::cavity(0.01, 5.0, 0.0, 5, 1200.0)
        .with_step(0.02)
        .with_stride(50)
        .with_label("fig4")
}

/// Weak coupling to a reservoir colder than the initial Fock state.
pub fn fig4_thermal() -> RunConfig {
    RunConfig {
        kt0: 3.0,
        t_max: 600.0,
        ..fig4()
    }
    .with_label("fig4-thermal")
}

/// Base run of the phase-boundary sweep.
pub fn fig5_base() -> RunConfig {
    RunConfig::cavity(0.01, 5.0, 5.0, 5, 100.0)
        .with_step(0.02)
        .with_stride(25)
        .with_label("fig5")
}

/// Reservoir temperature sweep across the initial system energy.
pub fn fig5() -> SweepConfig {
    SweepConfig {
        schema_version: SCHEMA_VERSION,
        sweep_key: SweepKey::Kt0,
        values: (0..=20).map(|i| 0.5 * i as f64).collect(),
        workers: None,
        out_dir: None,
        base: fig5_base(),
    }
}

/// Two-level atom with a broad reservoir (`lambda = 5 gamma0`): monotone decay.
pub fn fig6() -> RunConfig {
    RunConfig::tls(0.2, 1.0, 50.0).with_stride(10).with_label("fig6")
}

/// Two-level atom with a narrow reservoir (`lambda = gamma0 / 5`): damped Rabi oscillations.
pub fn fig6_strong() -> RunConfig {
    RunConfig::tls(0.2, 0.04, 200.0).with_stride(10).with_label("fig6-strong")
}

pub fn run_preset(name: &str) -> Option<RunConfig> {
    Some(match name {
        "fig2" => fig2(),
        "fig3" => fig3(),
        "fig4" => fig4(),
        "fig4-thermal" => fig4_thermal(),
        "fig6" => fig6(),
        "fig6-strong" => fig6_strong(),
        _ => return None,
    })
}

pub fn sweep_preset(name: &str) -> Option<SweepConfig> {
    match name {
        "fig5" => Some(fig5()),
        _ => None,
    }
}
