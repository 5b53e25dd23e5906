//! Relativistic Morse oscillators and their thermodynamics.
//!
//! The crate covers closed-form spectra of the quantum, Klein-Gordon and
//! Dirac Morse oscillators, the Pekeris reduction of the three-dimensional
//! radial problem (including a mapping for arbitrary invertible couplings),
//! the Riccati family of couplings for which that mapping is exact,
//! canonical-ensemble sweeps with Schottky-peak detection, and a
//! finite-difference eigensolver used to cross-check every closed form.
//!
//! All quantities are in eV and Å, with `hbar*c` carried explicitly.

// `!(x > 0.0)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod laguerre;
pub mod molecules;
pub mod numerics;
pub mod oracle;
pub mod pekeris;
pub mod presets;
pub mod riccati;
pub mod spectra;
pub mod thermo;
pub mod units;
pub mod validate;

pub mod cli;

pub use error::{Error, Result};
pub use molecules::{load_molecules, parse_molecules, write_molecules, MoleculeRecord};
pub use units::{amu_to_energy, dimensionless, OscillatorParams, PhysicalConstants, CODATA_2018};
