//! Named systems for spectra and thermodynamic sweeps.

use crate::error::{Error, Result};
use crate::molecules::{builtin_molecule, MoleculeRecord};
use crate::units::PhysicalConstants;

/// Bohr radius (Å), CODATA 2018.
pub const BOHR_RADIUS: f64 = 0.529_177_210_903;

/// Dimensionless Morse system with the two energy scales needed to restore units.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemPreset {
    pub name: String,
    pub alpha: f64,
    pub delta: f64,
    /// Oscillator quantum (eV).
    pub hbar_omega: f64,
    /// Rest energy (eV).
    pub mass_energy: f64,
}

impl SystemPreset {
    /// `hbar*omega / (m c^2)`.
    pub fn gamma_ratio(&self) -> f64 {
        self.hbar_omega / self.mass_energy
    }

    pub fn from_molecule(m: &MoleculeRecord) -> Self {
        Self {
            name: m.name.clone(),
            alpha: m.alpha,
            delta: m.delta(),
            hbar_omega: m.hbar_omega(),
            mass_energy: m.mass_energy,
        }
    }

    /// Electron in an extreme-ultraviolet trap: `alpha = 1`,
    /// `delta = E_h/(hbar omega) = 0.219444`, `hbar omega = 124 eV`, `m c^2 = 511 keV`.
    pub fn electron_uv() -> Self {
        Self {
            name: "electron-uv".into(),
            alpha: 1.0,
            delta: 0.219444,
            hbar_omega: 124.0,
            mass_energy: 511e3,
        }
    }
}

/// Names accepted by [`preset`].
pub const PRESET_NAMES: [&str; 5] = ["H2", "LiH", "HCl", "CO", "electron-uv"];

/// Resolves a molecule name or the `electron-uv` preset.
pub fn preset(name: &str, constants: &PhysicalConstants) -> Result<SystemPreset> {
    if name.eq_ignore_ascii_case("electron-uv") || name.eq_ignore_ascii_case("electron") {
        return Ok(SystemPreset::electron_uv());
    }
    builtin_molecule(name, constants)
        .map(|m| SystemPreset::from_molecule(&m))
        .map_err(|_| Error::InvalidParameter(format!("unknown preset `{name}` (known: {})", PRESET_NAMES.join(", "))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::{dimensionless, OscillatorParams, CODATA_2018};

    #[test]
    fn electron_delta_is_hartree_over_quantum() {
        let p = SystemPreset::electron_uv();
        let osc = OscillatorParams::new(p.mass_energy, p.hbar_omega, -1.0 / BOHR_RADIUS, BOHR_RADIUS).unwrap();
        let (_, delta) = dimensionless(&osc).unwrap();
        assert!((delta - p.delta).abs() < 1e-5);
        assert!((p.gamma_ratio() - 0.000242661).abs() < 1e-9);
    }

    #[test]
    fn every_name_resolves() {
        for name in PRESET_NAMES {
            assert!(preset(name, &CODATA_2018).is_ok(), "{name}");
        }
        assert!(preset("N2", &CODATA_2018).is_err());
    }
}
