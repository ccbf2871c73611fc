//! Reservoir models.
//!
//! The Ohmic bath `J(w) = eta * w * exp(-w / omega_c)` drives the cavity; the
//! Lorentzian bath `J(w) = gamma0 * lambda^2 / (2 pi ((omega0 - w)^2 + lambda^2))`
//! drives the two-level atom. Memory kernels are Fourier transforms of `J`
//! (weighted by the Bose-Einstein occupation for the thermal kernel).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::numerics::{gauss_kronrod_adaptive, QuadratureOptions};
use crate::{Error, Result, OMEGA_S};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OhmicBath {
    eta: f64,
    omega_c: f64,
}

impl OhmicBath {
    pub fn new(eta: f64, omega_c: f64) -> Result<Self> {
        if !(eta > 0.0 && eta.is_finite()) {
            return Err(Error::Config(format!("eta must be positive, got {eta}")));
        }
        if !(omega_c > 0.0 && omega_c.is_finite()) {
            return Err(Error::Config(format!(
                "omega_c must be positive, got {omega_c}"
            )));
        }
        Ok(Self { eta, omega_c })
    }

    /// Bath at coupling `ratio * eta_c` for the given cutoff.
    pub fn relative(ratio: f64, omega_c: f64) -> Result<Self> {
        Self::new(ratio * OMEGA_S / omega_c, omega_c)
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn omega_c(&self) -> f64 {
        self.omega_c
    }

    /// Critical coupling `eta_c = omega_s / omega_c` above which a localized
    /// bound state splits off below the band.
    pub fn eta_c(&self) -> f64 {
        OMEGA_S / self.omega_c
    }

    pub fn spectral_density(&self, omega: f64) -> f64 {
        if omega <= 0.0 {
            0.0
        } else {
            self.eta * omega * (-omega / self.omega_c).exp()
        }
    }

    /// `g(dt) = int_0^inf J(w) exp(-i w dt) dw = eta omega_c^2 / (1 + i omega_c dt)^2`.
    pub fn kernel_g(&self, dt: f64) -> Complex64 {
        let d = Complex64::new(1.0, self.omega_c * dt);
        Complex64::new(self.eta * self.omega_c * self.omega_c, 0.0) / (d * d)
    }

    /// Strict inequality: the critical point itself has no bound state.
    pub fn has_bound_state(&self) -> bool {
        self.eta > self.eta_c()
    }
}

pub fn ohmic_kernel_g(bath: &OhmicBath, dt: f64) -> Complex64 {
    bath.kernel_g(dt)
}

pub fn has_bound_state(bath: &OhmicBath) -> bool {
    bath.has_bound_state()
}

/// Initial thermal state of the reservoir, `kT0 = 0` meaning vacuum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReservoirState {
    kt0: f64,
}

impl ReservoirState {
    pub fn new(kt0: f64) -> Result<Self> {
        if !(kt0 >= 0.0 && kt0.is_finite()) {
            return Err(Error::Config(format!(
                "reservoir thermal energy kT0 must be >= 0, got {kt0}"
            )));
        }
        Ok(Self { kt0 })
    }

    pub fn vacuum() -> Self {
        Self { kt0: 0.0 }
    }

    pub fn kt0(&self) -> f64 {
        self.kt0
    }

    pub fn is_vacuum(&self) -> bool {
        self.kt0 == 0.0
    }

    /// Bose-Einstein occupation `1 / (exp(w / kT0) - 1)`.
    pub fn bose_occupation(&self, omega: f64) -> Result<f64> {
        if !(omega > 0.0) {
            return Err(Error::Contract(format!(
                "occupation needs a positive frequency, got {omega}"
            )));
        }
        if self.is_vacuum() {
            return Ok(0.0);
        }
        Ok(1.0 / (omega / self.kt0).exp_m1())
    }
}

pub fn bose_occupation(reservoir: &ReservoirState, omega: f64) -> Result<f64> {
    reservoir.bose_occupation(omega)
}

/// Thermal kernel `g~(dt) = int_0^inf J(w) n(w, T0) exp(-i w dt) dw` for the
/// Ohmic bath, evaluated in closed form.
///
/// Expanding `n = sum_m exp(-m w / kT0)` turns every term into a Gamma
/// integral, and the series sums to a trigamma function:
/// `g~(dt) = eta kT0^2 psi'(1 + kT0/omega_c + i kT0 dt)`.
pub fn thermal_kernel_gtilde(bath: &OhmicBath, reservoir: &ReservoirState, dt: f64) -> Complex64 {
    if reservoir.is_vacuum() {
        return Complex64::new(0.0, 0.0);
    }
    let kt = reservoir.kt0();
    let z = Complex64::new(1.0 + kt / bath.omega_c(), kt * dt);
    trigamma(z) * (bath.eta() * kt * kt)
}

/// Same kernel by adaptive Gauss-Kronrod quadrature over frequency.
///
/// The integrand's `w -> 0` limit is the finite value `eta kT0`; the upper
/// limit `omega_c (30 + kT0)` leaves a tail below `1e-14` of the peak.
pub fn thermal_kernel_gtilde_quadrature(
    bath: &OhmicBath,
    reservoir: &ReservoirState,
    dt: f64,
) -> Complex64 {
    if reservoir.is_vacuum() {
        return Complex64::new(0.0, 0.0);
    }
    let upper = gtilde_upper_limit(bath, reservoir);
    gauss_kronrod_adaptive(
        |w| thermal_integrand(bath, reservoir, w) * Complex64::cis(-w * dt),
        0.0,
        upper,
        oscillatory_options(upper, dt),
    )
}

pub(crate) fn gtilde_upper_limit(bath: &OhmicBath, reservoir: &ReservoirState) -> f64 {
    bath.omega_c() * (30.0 + reservoir.kt0())
}

/// `J(w) n(w)` with its analytic limit at `w = 0`.
pub fn thermal_integrand(bath: &OhmicBath, reservoir: &ReservoirState, omega: f64) -> Complex64 {
    let kt = reservoir.kt0();
    let value = if kt == 0.0 {
        0.0
    } else if omega <= 0.0 {
        bath.eta() * kt
    } else {
        bath.eta() * omega * (-omega / bath.omega_c()).exp() / (omega / kt).exp_m1()
    };
    Complex64::new(value, 0.0)
}

/// `g(dt)` by adaptive quadrature, the independent route to [`ohmic_kernel_g`].
pub fn ohmic_kernel_g_quadrature(bath: &OhmicBath, dt: f64) -> Complex64 {
    let upper = 40.0 * bath.omega_c();
    gauss_kronrod_adaptive(
        |w| Complex64::new(bath.spectral_density(w), 0.0) * Complex64::cis(-w * dt),
        0.0,
        upper,
        oscillatory_options(upper, dt),
    )
}

fn oscillatory_options(upper: f64, dt: f64) -> QuadratureOptions {
    let half_periods = (upper * dt.abs() / PI).ceil() as usize;
    QuadratureOptions {
        abs_tol: 1e-17,
        rel_tol: 1e-12,
        initial_panels: (16 + half_periods).min(1 << 20),
        max_panels: 400_000,
    }
}

/// Trigamma `psi'(z) = sum_{m >= 0} 1 / (z + m)^2` for `Re z > 0`.
///
/// Upward recurrence until `|z| >= 10`, then the Bernoulli asymptotic series.
pub fn trigamma(z: Complex64) -> Complex64 {
    debug_assert!(z.re > 0.0, "trigamma evaluated at Re z <= 0");
    let one = Complex64::new(1.0, 0.0);
    let mut z = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while z.norm() < 10.0 {
        acc += one / (z * z);
        z += 1.0;
    }
    // B_2k coefficients for k = 1..=7
    const B: [f64; 7] = [
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
        7.0 / 6.0,
    ];
    let inv = one / z;
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut power = inv2 * inv; // z^-(2k+1)
    for b in B {
        series += power * b;
        power *= inv2;
    }
    acc + inv + inv2 * 0.5 + series
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LorentzianBath {
    gamma0: f64,
    lambda: f64,
    omega0: f64,
}

impl LorentzianBath {
    pub fn new(gamma0: f64, lambda: f64, omega0: f64) -> Result<Self> {
        if !(gamma0 > 0.0 && gamma0.is_finite()) {
            return Err(Error::Config(format!("gamma0 must be positive, got {gamma0}")));
        }
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::Config(format!("lambda must be positive, got {lambda}")));
        }
        if !omega0.is_finite() {
            return Err(Error::Config(format!("omega0 must be finite, got {omega0}")));
        }
        Ok(Self {
            gamma0,
            lambda,
            omega0,
        })
    }

    /// Resonant bath, `omega0 = omega_s`.
    pub fn resonant(gamma0: f64, lambda: f64) -> Result<Self> {
        Self::new(gamma0, lambda, OMEGA_S)
    }

    pub fn gamma0(&self) -> f64 {
        self.gamma0
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    /// Reservoir correlation time.
    pub fn tau_b(&self) -> f64 {
        1.0 / self.lambda
    }

    /// Relaxation time.
    pub fn tau_r(&self) -> f64 {
        1.0 / self.gamma0
    }

    pub fn spectral_density(&self, omega: f64) -> f64 {
        let d = self.omega0 - omega;
        self.gamma0 * self.lambda * self.lambda / (2.0 * PI * (d * d + self.lambda * self.lambda))
    }

    /// `Gamma = sqrt(lambda^2 - 2 gamma0 lambda)`, imaginary when `lambda < 2 gamma0`.
    pub fn gamma_complex(&self) -> Complex64 {
        Complex64::new(self.lambda * self.lambda - 2.0 * self.gamma0 * self.lambda, 0.0).sqrt()
    }

    /// `f(dt) = (gamma0 lambda / 2) exp(-(i omega0 + lambda) dt)`: the transform
    /// of `J` taken over the whole frequency line.
    pub fn kernel_f(&self, dt: f64) -> Complex64 {
        Complex64::new(-self.lambda * dt, -self.omega0 * dt).exp() * (0.5 * self.gamma0 * self.lambda)
    }
}

pub fn lorentzian_kernel_f(bath: &LorentzianBath, dt: f64) -> Complex64 {
    bath.kernel_f(dt)
}
