//! Run and sweep configuration files.
//!
//! Configurations are flat TOML tables with an explicit `schema_version`.
//! Unknown keys and keys that do not apply to the chosen system are rejected.
//!
//! ```toml
//! schema_version = 1
//! system = "cavity"
//! eta_rel = 0.01     # coupling in units of the critical coupling 1/omega_c
//! omega_c = 5.0
//! kt0 = 15.0
//! n0 = 5
//! t_max = 600.0
//! step = 0.02
//! stride = 50
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::numerics::TimeGrid;
use crate::spectral::{LorentzianBath, OhmicBath, ReservoirState};
use crate::{Error, Result, OMEGA_S};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum System {
    Cavity,
    Tls,
}

/// How the two-level propagator is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TlsPropagator {
    /// Closed form; resonant baths only.
    #[default]
    Analytic,
    Volterra,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub system: System,

    /// Cavity coupling in units of `eta_c = 1/omega_c`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta_rel: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_c: Option<f64>,
    /// Initial Fock state of the cavity.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n0: Option<u32>,

    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    /// Lorentzian center; defaults to `omega_s`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tls_propagator: Option<TlsPropagator>,

    /// Initial reservoir temperature `k T0`; zero is the vacuum.
    #[serde(default)]
    pub kt0: f64,

    pub t_max: f64,
    /// Time step; defaults to `0.01` for the cavity and `0.002/gamma0` for the atom.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<f64>,
    /// Every `stride`-th grid point is written out.
    #[serde(default = "default_stride")]
    pub stride: usize,
    /// Repeat the run at half the step and report the difference.
    #[serde(default)]
    pub verify_step: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<PathBuf>,
}

fn default_stride() -> usize {
    10
}

/// Physical model resolved from a validated [`RunConfig`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    Cavity {
        bath: OhmicBath,
        reservoir: ReservoirState,
        n0: u32,
    },
    Tls {
        bath: LorentzianBath,
        propagator: TlsPropagator,
    },
}

impl RunConfig {
    pub fn cavity(eta_rel: f64, omega_c: f64, kt0: f64, n0: u32, t_max: f64) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            label: None,
            system: System::Cavity,
            eta_rel: Some(eta_rel),
            omega_c: Some(omega_c),
            n0: Some(n0),
            gamma0: None,
            lambda: None,
            omega0: None,
            tls_propagator: None,
            kt0,
            t_max,
            step: None,
            stride: default_stride(),
            verify_step: false,
            out_dir: None,
        }
    }

    pub fn tls(gamma0: f64, lambda: f64, t_max: f64) -> Self {
        Self {
            system: System::Tls,
            eta_rel: None,
            omega_c: None,
            n0: None,
            gamma0: Some(gamma0),
            lambda: Some(lambda),
            ..Self::cavity(0.0, 1.0, 0.0, 0, t_max)
        }
    }

    pub fn with_step(mut self, step: f64) -> Self {
        self.step = Some(step);
        self
    }

    pub fn with_stride(mut self, stride: usize) -> Self {
        self.stride = stride;
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let config: Self = toml::from_str(text).map_err(|e| Error::Parse {
            what: "run configuration".into(),
            reason: e.to_string(),
        })?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::Config(format!("cannot read {}: {e}", path.display()))
        })?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("run configuration serializes")
    }

    pub fn effective_step(&self) -> f64 {
        match (self.step, self.system) {
            (Some(h), _) => h,
            (None, System::Cavity) => 0.01,
            (None, System::Tls) => 0.002 / self.gamma0.unwrap_or(1.0),
        }
    }

    pub fn grid(&self) -> Result<TimeGrid> {
        TimeGrid::with_step(0.0, self.t_max, self.effective_step())
            .map_err(|e| Error::Config(e.to_string()))
    }

    /// Checks every constraint and resolves the physical model.
    pub fn model(&self) -> Result<Model> {
        self.validate()?;
        let cfg = |e: Error| Error::Config(e.to_string());
        Ok(match self.system {
            System::Cavity => {
                let omega_c = self.omega_c.unwrap();
                Model::Cavity {
                    bath: OhmicBath::new(self.eta_rel.unwrap() / omega_c, omega_c).map_err(cfg)?,
                    reservoir: ReservoirState::new(self.kt0).map_err(cfg)?,
                    n0: self.n0.unwrap(),
                }
            }
            System::Tls => Model::Tls {
                bath: LorentzianBath::new(
                    self.gamma0.unwrap(),
                    self.lambda.unwrap(),
                    self.omega0.unwrap_or(OMEGA_S),
                )
                .map_err(cfg)?,
                propagator: self.tls_propagator.unwrap_or_default(),
            },
        })
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.schema_version != SCHEMA_VERSION {
            return bad(format!(
                "schema_version {} is not supported (expected {SCHEMA_VERSION})",
                self.schema_version
            ));
        }
        let positive = |name: &str, x: Option<f64>| -> Result<()> {
            match x {
                Some(x) if x.is_finite() && x > 0.0 => Ok(()),
                Some(x) => Err(Error::Config(format!("{name} must be positive, got {x}"))),
                None => Err(Error::Config(format!("{name} is required for a {:?} run", self.system))),
            }
        };
        let absent = |name: &str, present: bool| -> Result<()> {
            if present {
                Err(Error::Config(format!("{name} does not apply to a {:?} run", self.system)))
            } else {
                Ok(())
            }
        };
        match self.system {
            System::Cavity => {
                positive("omega_c", self.omega_c)?;
                match self.eta_rel {
                    Some(e) if e.is_finite() && e >= 0.0 => {}
                    Some(e) => return bad(format!("eta_rel must be nonnegative, got {e}")),
                    None => return bad("eta_rel is required for a Cavity run".into()),
                }
                if self.n0.is_none() {
                    return bad("n0 is required for a Cavity run".into());
                }
                absent("gamma0", self.gamma0.is_some())?;
                absent("lambda", self.lambda.is_some())?;
                absent("omega0", self.omega0.is_some())?;
                absent("tls_propagator", self.tls_propagator.is_some())?;
            }
            System::Tls => {
                positive("gamma0", self.gamma0)?;
                positive("lambda", self.lambda)?;
                if let Some(w0) = self.omega0 {
                    positive("omega0", Some(w0))?;
                    if self.tls_propagator.unwrap_or_default() == TlsPropagator::Analytic
                        && (w0 - OMEGA_S).abs() > 1e-12
                    {
                        return bad("the analytic propagator needs omega0 = 1; use tls_propagator = \"volterra\"".into());
                    }
                }
                absent("eta_rel", self.eta_rel.is_some())?;
                absent("omega_c", self.omega_c.is_some())?;
                absent("n0", self.n0.is_some())?;
                if self.kt0 != 0.0 {
                    return bad("the two-level atom is only supported with a vacuum reservoir (kt0 = 0)".into());
                }
            }
        }
        if !(self.kt0.is_finite() && self.kt0 >= 0.0) {
            return bad(format!("kt0 must be nonnegative, got {}", self.kt0));
        }
        if !(self.t_max.is_finite() && self.t_max > 0.0) {
            return bad(format!("t_max must be positive, got {}", self.t_max));
        }
        if let Some(h) = self.step {
            if !(h.is_finite() && h > 0.0) {
                return bad(format!("step must be positive, got {h}"));
            }
        }
        let grid = self.grid()?;
        if self.stride == 0 || grid.n_steps() % self.stride != 0 {
            return bad(format!(
                "stride {} does not divide the {} time steps",
                self.stride,
                grid.n_steps()
            ));
        }
        Ok(())
    }
}

/// Parameter that a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepKey {
    Kt0,
    Eta,
    N0,
}

impl SweepKey {
    pub fn name(self) -> &'static str {
        match self {
            SweepKey::Kt0 => "kt0",
            SweepKey::Eta => "eta",
            SweepKey::N0 => "n0",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub schema_version: u32,
    pub sweep_key: SweepKey,
    pub values: Vec<f64>,
    /// Worker threads; defaults to the number of values capped at the
    /// available parallelism.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<PathBuf>,
    pub base: RunConfig,
}

impl SweepConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let config: Self = toml::from_str(text).map_err(|e| Error::Parse {
            what: "sweep configuration".into(),
            reason: e.to_string(),
        })?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::Config(format!("cannot read {}: {e}", path.display()))
        })?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("sweep configuration serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Config(format!(
                "schema_version {} is not supported (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        if self.values.is_empty() {
            return Err(Error::Config("sweep values are empty".into()));
        }
        if self.values.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Config("sweep values must be strictly increasing".into()));
        }
        if self.workers == Some(0) {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        for &value in &self.values {
            self.member(value)?.validate()?;
        }
        Ok(())
    }

    /// The run configuration of one sweep member.
    pub fn member(&self, value: f64) -> Result<RunConfig> {
        let mut run = self.base.clone();
        match self.sweep_key {
            SweepKey::Kt0 => run.kt0 = value,
            SweepKey::Eta => run.eta_rel = Some(value),
            SweepKey::N0 => {
                if value < 0.0 || value.fract() != 0.0 || value > u32::MAX as f64 {
                    return Err(Error::Config(format!("n0 sweep value {value} is not a nonnegative integer")));
                }
                run.n0 = Some(value as u32);
            }
        }
        run.label = Some(format!("{}={value}", self.sweep_key.name()));
        Ok(run)
    }

    pub fn worker_count(&self) -> usize {
        self.workers.unwrap_or_else(|| {
            let cap = std::thread::available_parallelism().map_or(1, |n| n.get());
            self.values.len().min(cap)
        })
    }
}
