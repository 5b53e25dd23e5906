//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by the spectral, mapping, thermodynamic and oracle routines.
///
/// Every message names the invariant that was violated so the CLI can
/// forward it verbatim.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid molecule `{molecule}`: {field} {message}")]
    Validation {
        molecule: String,
        field: &'static str,
        message: String,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("level {level} out of range: the spectrum holds levels 0..={max:?}")]
    LevelOutOfRange { level: u32, max: Option<u32> },

    #[error("level {level} is unbound: Lambda - 1/2 - N = {margin} <= 0")]
    UnboundLevel { level: u32, margin: f64 },

    #[error("inconsistent angular momentum pair: l = {l}, j = {two_j}/2 (need l = j -/+ 1/2)")]
    InconsistentChannel { l: u32, two_j: u32 },

    #[error("degenerate channel: 1 - B/2A = {0} <= 0, effective equilibrium is undefined")]
    DegenerateChannel(f64),

    #[error("singular expansion: gamma*r_e + f(1) = 0")]
    SingularExpansion,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("evaluation at singularity: r = {at} is within {distance:e} of the pole at {pole}")]
    Singularity { at: f64, pole: f64, distance: f64 },

    #[error("Riccati closure failure: residual {residual:e} exceeds {tolerance:e}")]
    ClosureFailure { residual: f64, tolerance: f64 },

    #[error("empty spectrum: all {filtered} levels were removed by positivity filtering")]
    EmptySpectrum { filtered: usize },

    #[error("boundary leak: eigenfunction {level} has relative amplitude {amplitude:e} at the box edge (need < 1e-8)")]
    BoundaryLeak { level: usize, amplitude: f64 },

    #[error("non-finite potential at grid node {at}")]
    NonFinitePotential { at: f64 },

    #[error("grid problem: {0}")]
    Grid(String),

    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    /// Stable machine-readable identifier used in CLI error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::Validation { .. } => "validation",
            Error::Domain(_) => "domain",
            Error::LevelOutOfRange { .. } => "level_out_of_range",
            Error::UnboundLevel { .. } => "unbound_level",
            Error::InconsistentChannel { .. } => "inconsistent_channel",
            Error::DegenerateChannel(_) => "degenerate_channel",
            Error::SingularExpansion => "singular_expansion",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::Singularity { .. } => "singularity",
            Error::ClosureFailure { .. } => "closure_failure",
            Error::EmptySpectrum { .. } => "empty_spectrum",
            Error::BoundaryLeak { .. } => "boundary_leak",
            Error::NonFinitePotential { .. } => "non_finite_potential",
            Error::Grid(_) => "grid",
            Error::Io { .. } => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
