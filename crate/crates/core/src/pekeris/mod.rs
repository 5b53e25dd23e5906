//! Pekeris reduction of the three-dimensional radial problem.
//!
//! The radial equation with a non-minimal coupling `U(r)` carries the terms
//! `U/r` and `1/r^2`. Expanding `r_e/r` and `(r_e/r)^2` to second order in
//! `y - 1 = gamma U` turns it into an effective Morse problem (for the Morse
//! coupling) or, more generally, into a potential quadratic in `U`.

pub mod coupling;
pub mod mapping;

pub use coupling::{
    homographic, homographic_centered, lennard_jones_1269, morse, tabulated, tabulated_from_csv, CouplingFunction,
    CouplingSpec,
};
pub use mapping::{generalized_coeffs, pekeris_map, ExpansionCoeffs, MapOptions, MappedProblem};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::units::{dimensionless, OscillatorParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Equation {
    KleinGordon,
    Dirac,
}

/// Spin projection label: `j = l + 1/2` (plus) or `j = l - 1/2` (minus).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpinBranch {
    Plus,
    Minus,
}

impl SpinBranch {
    pub fn sign(self) -> f64 {
        match self {
            SpinBranch::Plus => 1.0,
            SpinBranch::Minus => -1.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SpinBranch::Plus => "plus",
            SpinBranch::Minus => "minus",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpinAngularChannel {
    pub equation: Equation,
    pub l: u32,
    pub branch: SpinBranch,
}

impl SpinAngularChannel {
    pub fn new(equation: Equation, l: u32, branch: SpinBranch) -> Self {
        Self { equation, l, branch }
    }

    pub fn kg(l: u32) -> Self {
        Self::new(Equation::KleinGordon, l, SpinBranch::Plus)
    }

    pub fn dirac(l: u32, branch: SpinBranch) -> Self {
        Self::new(Equation::Dirac, l, branch)
    }

    /// `f(j, l) = 2[j(j+1) - l(l+1) - 3/4]`, zero for Klein-Gordon.
    ///
    /// The minus branch at `l = 0` has no physical `j`; the formal value
    /// `j = -1/2` gives `f = -2`.
    pub fn f(&self) -> f64 {
        match self.equation {
            Equation::KleinGordon => 0.0,
            Equation::Dirac => {
                let l = self.l as f64;
                let j = l + 0.5 * self.branch.sign();
                2.0 * (j * (j + 1.0) - l * (l + 1.0) - 0.75)
            }
        }
    }

    fn centrifugal(&self) -> f64 {
        let l = self.l as f64;
        l * (l + 1.0)
    }
}

/// How the oscillator quantum and the offset are reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Truncation {
    /// `Omega^2 = omega^2 A (1 - B/2A)^2`, `U0 = (m Omega^2/2 gamma^2)(C - B^2/4A)`.
    #[default]
    Full,
    /// First order in `delta`:
    /// `Omega^2 = omega^2 [1 + delta(3 + 2(1+f)(1+alpha)/alpha + l(l+1)(alpha^2+3alpha+2)/alpha)]`
    /// and `U0 = (m omega^2/2 gamma^2) delta (l(l+1) - 1)`.
    Linearized,
}

/// Dimensionless constants of the effective Morse reduction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PekerisConstants {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

/// `A = 1 + delta(2(1+f) + l(l+1)(3-alpha))`,
/// `B = -delta[1 - 2(1+f)/alpha - 2 l(l+1)/alpha]`,
/// `C = delta(l(l+1) - 1)`.
pub fn channel_constants(alpha: f64, delta: f64, channel: &SpinAngularChannel) -> PekerisConstants {
    let f1 = 1.0 + channel.f();
    let ll = channel.centrifugal();
    PekerisConstants {
        a: 1.0 + delta * (2.0 * f1 + ll * (3.0 - alpha)),
        b: -delta * (1.0 - 2.0 * f1 / alpha - 2.0 * ll / alpha),
        c: delta * (ll - 1.0),
    }
}

/// Squared quantum ratio `(Omega/omega)^2` at first order in `delta`.
pub fn linearized_frequency_ratio(alpha: f64, delta: f64, channel: &SpinAngularChannel) -> f64 {
    let f1 = 1.0 + channel.f();
    let ll = channel.centrifugal();
    1.0 + delta * (3.0 + 2.0 * f1 * (1.0 + alpha) / alpha + ll * (alpha * alpha + 3.0 * alpha + 2.0) / alpha)
}

/// Quadratic series `c0 + c1 (y-1) + c2 (y-1)^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticSeries {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
}

impl QuadraticSeries {
    pub fn eval(&self, y: f64) -> f64 {
        let t = y - 1.0;
        self.c0 + t * (self.c1 + t * self.c2)
    }
}

/// Second-order expansions of `r_e/r` and `(r_e/r)^2` in `y = e^{gamma(r - r_e)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicExpansion {
    pub inverse: QuadraticSeries,
    pub inverse_square: QuadraticSeries,
}

/// Classic expansion coefficients for `gamma r_e = -alpha`.
pub fn classic_expansion(alpha: f64) -> ClassicExpansion {
    let g = -alpha;
    ClassicExpansion {
        inverse: QuadraticSeries {
            c0: 1.0,
            c1: -1.0 / g,
            c2: (2.0 + g) / (2.0 * g * g),
        },
        inverse_square: QuadraticSeries {
            c0: 1.0,
            c1: -2.0 / g,
            c2: (3.0 + g) / (g * g),
        },
    }
}

/// The effective Morse problem `(m Omega^2/2gamma^2)[e^{gamma(r - r_eff)} - 1]^2 + U0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveMorse {
    /// `hbar*Omega` (eV).
    pub hbar_omega_eff: f64,
    /// Å
    pub r_eff: f64,
    /// eV
    pub u0: f64,
    pub constants: PekerisConstants,
    pub gamma: f64,
    /// Rest energy (eV).
    pub mass: f64,
    pub hbar_c: f64,
}

impl EffectiveMorse {
    /// Builds the effective problem from explicit constants with the full reduction.
    pub fn from_constants(params: &OscillatorParams, constants: PekerisConstants) -> Result<Self> {
        let PekerisConstants { a, b, c } = constants;
        if !(a > 0.0) {
            return Err(Error::Domain(format!("Pekeris constant A = {a} must be > 0")));
        }
        let k = 1.0 - b / (2.0 * a);
        if !(k > 0.0) {
            return Err(Error::DegenerateChannel(k));
        }
        let hbar_omega_eff = params.hbar_omega * a.sqrt() * k;
        let depth = depth_for(params, hbar_omega_eff);
        Ok(Self {
            hbar_omega_eff,
            r_eff: params.r_e + k.ln() / params.gamma,
            u0: depth * (c - b * b / (4.0 * a)),
            constants,
            gamma: params.gamma,
            mass: params.mass,
            hbar_c: params.hbar_c,
        })
    }

    /// `D_Omega = m Omega^2 / (2 gamma^2)`.
    pub fn depth(&self) -> f64 {
        let w = self.hbar_omega_eff;
        self.mass * w * w / (self.hbar_c * self.hbar_c * 2.0 * self.gamma * self.gamma)
    }

    fn anharmonicity(&self) -> f64 {
        self.gamma * self.gamma * self.hbar_c * self.hbar_c / (2.0 * self.mass * self.hbar_omega_eff)
    }

    /// Highest bound level.
    pub fn nmax(&self) -> Option<u32> {
        let top = 1.0 / (2.0 * self.anharmonicity()) - 0.5;
        (top >= 0.0).then(|| top.floor().min(u32::MAX as f64) as u32)
    }

    /// `hbar Omega (N+1/2)[1 - (gamma^2 hbar/2 m Omega)(N+1/2)] + U0`.
    pub fn energy(&self, n: u32) -> Result<f64> {
        match self.nmax() {
            Some(max) if n <= max => {
                let x = n as f64 + 0.5;
                Ok(self.hbar_omega_eff * x * (1.0 - self.anharmonicity() * x) + self.u0)
            }
            max => Err(Error::LevelOutOfRange { level: n, max }),
        }
    }

    pub fn potential(&self, r: f64) -> f64 {
        let w = (self.gamma * (r - self.r_eff)).exp_m1();
        self.depth() * w * w + self.u0
    }

    /// Radius of the well minimum.
    pub fn minimum(&self) -> f64 {
        self.r_eff
    }
}

fn depth_for(params: &OscillatorParams, hbar_omega_q: f64) -> f64 {
    params.mass * hbar_omega_q * hbar_omega_q / (params.hbar_c * params.hbar_c * 2.0 * params.gamma * params.gamma)
}

/// Effective Morse reduction of a spin/angular channel.
pub fn effective_morse(
    params: &OscillatorParams,
    channel: &SpinAngularChannel,
    truncation: Truncation,
) -> Result<EffectiveMorse> {
    let (alpha, delta) = dimensionless(params)?;
    let constants = channel_constants(alpha, delta, channel);
    match truncation {
        Truncation::Full => EffectiveMorse::from_constants(params, constants),
        Truncation::Linearized => {
            let PekerisConstants { a, b, .. } = constants;
            let k = 1.0 - b / (2.0 * a);
            if !(k > 0.0) {
                return Err(Error::DegenerateChannel(k));
            }
            let ratio = linearized_frequency_ratio(alpha, delta, channel);
            if !(ratio > 0.0) {
                return Err(Error::Domain(format!(
                    "linearized (Omega/omega)^2 = {ratio} must be > 0"
                )));
            }
            Ok(EffectiveMorse {
                hbar_omega_eff: params.hbar_omega * ratio.sqrt(),
                r_eff: params.r_e + k.ln() / params.gamma,
                u0: params.well_depth() * delta * (channel.centrifugal() - 1.0),
                constants,
                gamma: params.gamma,
                mass: params.mass,
                hbar_c: params.hbar_c,
            })
        }
    }
}

fn branch_radicand(alpha: f64, delta: f64, branch: SpinBranch) -> f64 {
    1.0 + delta * (3.0 + branch.sign() * 2.0 * (1.0 + alpha) / alpha)
}

/// Largest vibrational index, `floor[(delta alpha^2)^-1 sqrt(1 + delta(3 +/- 2(1+alpha)/alpha)) - 1/2]`.
/// `None` means no bound state.
pub fn nmax(alpha: f64, delta: f64, branch: SpinBranch) -> Option<u32> {
    let rad = branch_radicand(alpha, delta, branch);
    if !(rad > 0.0 && alpha > 0.0 && delta > 0.0) {
        return None;
    }
    let top = rad.sqrt() / (delta * alpha * alpha) - 0.5;
    (top >= 0.0).then(|| top.floor().min(u32::MAX as f64) as u32)
}

/// Recast S-wave energy in units of `hbar omega`:
/// `s (N+1/2) [1 - alpha^2 delta (N+1/2)/(2 s)] - 1/(2 alpha^2)` with
/// `s = sqrt(1 + delta(3 +/- 2(1+alpha)/alpha))`.
pub fn pekeris_energy(n: u32, alpha: f64, delta: f64, branch: SpinBranch) -> Result<f64> {
    if !(alpha > 0.0 && delta > 0.0) {
        return Err(Error::Domain(format!(
            "alpha and delta must be > 0, got ({alpha}, {delta})"
        )));
    }
    match nmax(alpha, delta, branch) {
        Some(max) if n <= max => {
            let s = branch_radicand(alpha, delta, branch).sqrt();
            let x = n as f64 + 0.5;
            Ok(s * x * (1.0 - alpha * alpha * delta * x / (2.0 * s)) - 1.0 / (2.0 * alpha * alpha))
        }
        max => Err(Error::LevelOutOfRange { level: n, max }),
    }
}

/// Every bound level of one branch.
pub fn pekeris_levels(alpha: f64, delta: f64, branch: SpinBranch) -> Result<Vec<f64>> {
    match nmax(alpha, delta, branch) {
        None => Ok(Vec::new()),
        Some(max) => (0..=max).map(|n| pekeris_energy(n, alpha, delta, branch)).collect(),
    }
}
