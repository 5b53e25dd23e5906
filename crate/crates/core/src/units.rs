//! Physical constants, unit conversion and the dimensionless `(alpha, delta)`
//! parameterization of a deformed oscillator.
//!
//! Everything internal is expressed in eV and Å with `hbar*c` carried
//! explicitly, so `hbar` never appears on its own:
//!
//! ```text
//! m*omega/hbar = (m c^2)(hbar omega) / (hbar c)^2      [1/Å^2]
//! hbar^2 / 2m  = (hbar c)^2 / (2 m c^2)                [eV Å^2]
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The three constants the formulas need.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicalConstants {
    /// `hbar*c` in eV·Å.
    pub hbar_c: f64,
    /// Rest energy of one atomic mass unit in eV.
    pub amu_to_ev: f64,
    /// Boltzmann constant in eV/K.
    pub k_b: f64,
}

/// CODATA 2018 recommended values.
pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
    hbar_c: 1973.269804,
    amu_to_ev: 931.494_102_42e6,
    k_b: 8.617_333_262e-5,
};

/// Offset between the Kelvin and Celsius scales.
pub const CELSIUS_OFFSET: f64 = 273.15;

impl Default for PhysicalConstants {
    fn default() -> Self {
        CODATA_2018
    }
}

impl PhysicalConstants {
    /// Validates that every constant is finite and strictly positive.
    pub fn validated(self) -> Result<Self> {
        for (name, v) in [
            ("hbar_c", self.hbar_c),
            ("amu_to_ev", self.amu_to_ev),
            ("k_b", self.k_b),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "physical constant {name} must be finite and > 0, got {v}"
                )));
            }
        }
        Ok(self)
    }

    /// Reads a constants table written as a JSON object with the keys
    /// `hbar_c`, `amu_to_ev` and `k_b`.
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        let table: PhysicalConstants = serde_json::from_str(&text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        table.validated()
    }

    pub fn amu_to_energy(&self, mass_amu: f64) -> Result<f64> {
        amu_to_energy_with(mass_amu, self)
    }
}

/// Rest energy (eV) of a mass given in atomic mass units, CODATA 2018 table.
pub fn amu_to_energy(mass_amu: f64) -> Result<f64> {
    amu_to_energy_with(mass_amu, &CODATA_2018)
}

fn amu_to_energy_with(mass_amu: f64, constants: &PhysicalConstants) -> Result<f64> {
    if !(mass_amu.is_finite() && mass_amu > 0.0) {
        return Err(Error::Domain(format!("mass must be > 0 amu, got {mass_amu}")));
    }
    Ok(mass_amu * constants.amu_to_ev)
}

/// Dimensionful parameters of a deformed oscillator.
///
/// `gamma` is signed: bound Morse problems have `gamma < 0`, so that
/// `alpha = -gamma*r_e > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillatorParams {
    /// Rest energy `m c^2` (eV).
    pub mass: f64,
    /// Oscillator quantum `hbar*omega` (eV).
    pub hbar_omega: f64,
    /// Deformation parameter (1/Å).
    pub gamma: f64,
    /// Equilibrium distance (Å).
    pub r_e: f64,
    /// `hbar*c` used to form every derived quantity (eV·Å).
    pub hbar_c: f64,
}

impl OscillatorParams {
    /// Parameters in eV/Å with the CODATA 2018 `hbar*c`.
    pub fn new(mass: f64, hbar_omega: f64, gamma: f64, r_e: f64) -> Result<Self> {
        Self::with_hbar_c(mass, hbar_omega, gamma, r_e, CODATA_2018.hbar_c)
    }

    /// Parameters in an arbitrary unit system. With `hbar_c = 1`, `mass` and
    /// `hbar_omega` act as `m` and `omega` in units where `hbar = 1`.
    pub fn with_hbar_c(mass: f64, hbar_omega: f64, gamma: f64, r_e: f64, hbar_c: f64) -> Result<Self> {
        let check = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::Domain(format!(
                    "oscillator parameter {name} must be finite and > 0, got {v}"
                )))
            }
        };
        check("mass", mass)?;
        check("hbar_omega", hbar_omega)?;
        check("r_e", r_e)?;
        check("hbar_c", hbar_c)?;
        if !gamma.is_finite() {
            return Err(Error::Domain(format!("gamma must be finite, got {gamma}")));
        }
        Ok(Self {
            mass,
            hbar_omega,
            gamma,
            r_e,
            hbar_c,
        })
    }

    /// Rebuilds dimensionful parameters from `(alpha, delta)`, the oscillator
    /// quantum and the rest energy: `r_e = hbar/sqrt(m omega delta)` and
    /// `gamma = -alpha/r_e`.
    pub fn from_dimensionless(alpha: f64, delta: f64, hbar_omega: f64, mass: f64, hbar_c: f64) -> Result<Self> {
        if !(alpha > 0.0 && delta > 0.0) {
            return Err(Error::Domain(format!(
                "alpha and delta must be > 0, got ({alpha}, {delta})"
            )));
        }
        let r_e = hbar_c / (mass * hbar_omega * delta).sqrt();
        Self::with_hbar_c(mass, hbar_omega, -alpha / r_e, r_e, hbar_c)
    }

    /// `m*omega/hbar` in 1/length².
    pub fn m_omega_over_hbar(&self) -> f64 {
        self.mass * self.hbar_omega / (self.hbar_c * self.hbar_c)
    }

    /// Kinetic prefactor `hbar^2/(2m)` in energy·length².
    pub fn kinetic_prefactor(&self) -> f64 {
        self.hbar_c * self.hbar_c / (2.0 * self.mass)
    }

    /// Morse well depth `D = m omega^2 / (2 gamma^2)`; infinite when `gamma = 0`.
    pub fn well_depth(&self) -> f64 {
        self.m_omega_over_hbar() * self.hbar_omega / (2.0 * self.gamma * self.gamma)
    }

    /// `alpha = -gamma*r_e`, not checked for sign.
    pub fn alpha(&self) -> f64 {
        -self.gamma * self.r_e
    }

    /// `delta = hbar/(m omega r_e^2)`.
    pub fn delta(&self) -> f64 {
        1.0 / (self.m_omega_over_hbar() * self.r_e * self.r_e)
    }

    /// Same parameters with the oscillator quantum replaced.
    pub fn with_hbar_omega(&self, hbar_omega: f64) -> Result<Self> {
        Self::with_hbar_c(self.mass, hbar_omega, self.gamma, self.r_e, self.hbar_c)
    }

    /// Same parameters with a different deformation.
    pub fn with_gamma(&self, gamma: f64) -> Result<Self> {
        Self::with_hbar_c(self.mass, self.hbar_omega, gamma, self.r_e, self.hbar_c)
    }
}

/// Returns `(alpha, delta)` with `alpha = -gamma*r_e` and
/// `delta = hbar/(m omega r_e^2)`; bound Morse problems need `alpha > 0`.
pub fn dimensionless(params: &OscillatorParams) -> Result<(f64, f64)> {
    let alpha = params.alpha();
    if alpha <= 0.0 {
        return Err(Error::Domain(format!(
            "alpha = -gamma*r_e must be > 0 for a bound Morse problem, got {alpha}"
        )));
    }
    Ok((alpha, params.delta()))
}
