//! Molecule parameter store.
//!
//! The file format is UTF-8 text with one JSON object per line:
//!
//! ```text
//! # comment lines start with '#', blank lines are ignored
//! {"name": "H2", "De_eV": 4.7446, "re_angstrom": 0.7416, "mass_amu": 0.50391, "alpha": 1.440558}
//! ```
//!
//! Required keys are `name`, `De_eV`, `re_angstrom`, `mass_amu` and `alpha`;
//! `delta_ref` and `provenance` are optional. Any other key is rejected.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::{OscillatorParams, PhysicalConstants, CODATA_2018};

/// Relative tolerance between the computed `delta` and a stored `delta_ref`.
pub const DELTA_REF_TOLERANCE: f64 = 0.02;

/// The database shipped with the crate.
pub const BUILTIN_MOLECULES: &str = include_str!("../data/molecules.jsonl");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    name: String,
    #[serde(rename = "De_eV")]
    de_ev: f64,
    re_angstrom: f64,
    mass_amu: f64,
    alpha: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    delta_ref: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<String>,
}

/// A diatomic molecule described by a Morse fit.
#[derive(Debug, Clone, PartialEq)]
pub struct MoleculeRecord {
    pub name: String,
    /// Dissociation energy (eV).
    pub de: f64,
    /// Equilibrium distance (Å).
    pub re: f64,
    /// Reduced mass (amu).
    pub mass_amu: f64,
    pub alpha: f64,
    pub delta_ref: Option<f64>,
    pub provenance: Option<String>,
    /// Rest energy of the reduced mass (eV).
    pub mass_energy: f64,
    /// `hbar^2/(m r_e^2)` (eV).
    pub e0: f64,
}

impl MoleculeRecord {
    /// Builds and validates a record, computing `E0` with the given constants.
    pub fn new(
        name: impl Into<String>,
        de: f64,
        re: f64,
        mass_amu: f64,
        alpha: f64,
        constants: &PhysicalConstants,
    ) -> Result<Self> {
        let name = name.into();
        let positive = |field: &'static str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::Validation {
                    molecule: name.clone(),
                    field,
                    message: format!("must be finite and > 0, got {v}"),
                })
            }
        };
        positive("De", de)?;
        positive("re", re)?;
        positive("mass", mass_amu)?;
        positive("alpha", alpha)?;
        let mass_energy = mass_amu * constants.amu_to_ev;
        let e0 = constants.hbar_c * constants.hbar_c / (mass_energy * re * re);
        Ok(Self {
            name,
            de,
            re,
            mass_amu,
            alpha,
            delta_ref: None,
            provenance: None,
            mass_energy,
            e0,
        })
    }

    /// `delta = sqrt(E0/(2 alpha^2 De))`.
    pub fn delta(&self) -> f64 {
        (self.e0 / (2.0 * self.alpha * self.alpha * self.de)).sqrt()
    }

    /// `Lambda = sqrt(2 De/E0)/alpha`, the Morse well parameter.
    pub fn lambda(&self) -> f64 {
        (2.0 * self.de / self.e0).sqrt() / self.alpha
    }

    /// Oscillator quantum `hbar*omega = E0/delta`.
    pub fn hbar_omega(&self) -> f64 {
        self.e0 / self.delta()
    }

    /// Returns a copy with `E0` replaced, e.g. to inject a reference value.
    pub fn with_e0(&self, e0: f64) -> Self {
        Self { e0, ..self.clone() }
    }

    /// Oscillator parameters with `gamma = -alpha/r_e`.
    pub fn oscillator(&self, hbar_c: f64) -> Result<OscillatorParams> {
        OscillatorParams::with_hbar_c(
            self.mass_energy,
            self.hbar_omega(),
            -self.alpha / self.re,
            self.re,
            hbar_c,
        )
    }

    fn check_reference(&self) -> Result<()> {
        if let Some(reference) = self.delta_ref {
            let delta = self.delta();
            let rel = (delta - reference).abs() / reference.abs();
            if !(rel <= DELTA_REF_TOLERANCE) {
                return Err(Error::Validation {
                    molecule: self.name.clone(),
                    field: "delta_ref",
                    message: format!(
                        "computed delta {delta} differs from delta_ref {reference} by {:.2}% (limit 2%)",
                        rel * 100.0
                    ),
                });
            }
        }
        Ok(())
    }

    fn to_entry(&self) -> Entry {
        Entry {
            name: self.name.clone(),
            de_ev: self.de,
            re_angstrom: self.re,
            mass_amu: self.mass_amu,
            alpha: self.alpha,
            delta_ref: self.delta_ref,
            provenance: self.provenance.clone(),
        }
    }
}

/// Parses the molecule text format.
pub fn parse_molecules(text: &str, constants: &PhysicalConstants) -> Result<Vec<MoleculeRecord>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let entry: Entry = serde_json::from_str(line).map_err(|e| Error::Parse {
            line: idx + 1,
            message: e.to_string(),
        })?;
        let mut record = MoleculeRecord::new(
            entry.name,
            entry.de_ev,
            entry.re_angstrom,
            entry.mass_amu,
            entry.alpha,
            constants,
        )?;
        if let Some(d) = entry.delta_ref {
            if !(d.is_finite() && d > 0.0) {
                return Err(Error::Validation {
                    molecule: record.name,
                    field: "delta_ref",
                    message: format!("must be finite and > 0, got {d}"),
                });
            }
        }
        record.delta_ref = entry.delta_ref;
        record.provenance = entry.provenance;
        record.check_reference()?;
        out.push(record);
    }
    Ok(out)
}

/// Reads a molecule file from disk.
pub fn load_molecules(path: impl AsRef<Path>, constants: &PhysicalConstants) -> Result<Vec<MoleculeRecord>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_molecules(&text, constants)
}

/// Serializes records in the same line format `parse_molecules` reads.
pub fn write_molecules(records: &[MoleculeRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(&r.to_entry()).expect("entry serializes"));
        out.push('\n');
    }
    out
}

/// The shipped database evaluated with the given constants.
pub fn builtin_molecules(constants: &PhysicalConstants) -> Vec<MoleculeRecord> {
    parse_molecules(BUILTIN_MOLECULES, constants).expect("shipped molecule table is valid")
}

/// Looks up a shipped molecule by case-insensitive name.
pub fn builtin_molecule(name: &str, constants: &PhysicalConstants) -> Result<MoleculeRecord> {
    builtin_molecules(constants)
        .into_iter()
        .find(|m| m.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::InvalidParameter(format!("unknown molecule `{name}`")))
}

/// Shorthand for the shipped H2 record with CODATA 2018 constants.
pub fn h2() -> MoleculeRecord {
    builtin_molecule("H2", &CODATA_2018).expect("H2 ships with the crate")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn h2_characteristic_energy() {
        let h2 = h2();
        assert_relative_eq!(h2.e0, 1.5083e-2, max_relative = 1e-4);
        assert!((h2.delta() - 0.0276729).abs() / 0.0276729 < 5e-3);
    }

    #[test]
    fn shipped_deltas_match_references() {
        for m in builtin_molecules(&CODATA_2018) {
            let reference = m.delta_ref.unwrap();
            assert!((m.delta() - reference).abs() / reference < 0.02, "{}", m.name);
        }
    }

    #[test]
    fn empty_input_is_empty_list() {
        assert!(parse_molecules("", &CODATA_2018).unwrap().is_empty());
        assert!(parse_molecules("# only a comment\n\n", &CODATA_2018)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn negative_de_names_the_field() {
        let text = r#"{"name": "X", "De_eV": -1, "re_angstrom": 1, "mass_amu": 1, "alpha": 1}"#;
        match parse_molecules(text, &CODATA_2018) {
            Err(Error::Validation { field, molecule, .. }) => {
                assert_eq!(field, "De");
                assert_eq!(molecule, "X");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "# header\n{\"name\": \"X\", \"De_eV\": 1, \"re_angstrom\": 1, \"mass_amu\": 1, \"alpha\": 1, \"colour\": 3}\n";
        match parse_molecules(text, &CODATA_2018) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn inconsistent_reference_is_rejected() {
        let text = r#"{"name": "H2", "De_eV": 4.7446, "re_angstrom": 0.7416, "mass_amu": 0.50391, "alpha": 1.440558, "delta_ref": 0.03}"#;
        assert!(matches!(
            parse_molecules(text, &CODATA_2018),
            Err(Error::Validation { field: "delta_ref", .. })
        ));
    }

    #[test]
    fn file_round_trip_is_exact() {
        let records = builtin_molecules(&CODATA_2018);
        let back = parse_molecules(&write_molecules(&records), &CODATA_2018).unwrap();
        assert_eq!(records, back);
    }
}
