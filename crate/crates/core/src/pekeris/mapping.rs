//! Pekeris mapping of the radial equation for an arbitrary invertible coupling.
//!
//! With `y - 1 = gamma U` and `r_e/r = (1 + f(y)/(gamma r_e))^{-1}` expanded
//! to second order around `y = 1`, the radial potential
//!
//! ```text
//! (m w^2/2) U^2 - (hbar w/2) U' - (1+f) hbar w U/r + hbar^2 l(l+1)/(2 m r^2)
//! ```
//!
//! becomes `A1 (gamma U)^2 + A2 (gamma U) + A3 - (hbar w/2) U'` plus a cubic
//! remainder proportional to `a2`.

use crate::error::{Error, Result};
use crate::pekeris::coupling::CouplingSpec;
use crate::pekeris::SpinAngularChannel;
use crate::units::OscillatorParams;

/// Expansion of `r_e/r ~ c0 + a1 (y-1) + a2 (y-1)^2` and
/// `(r_e/r)^2 ~ c0^2 + b1 (y-1) + b2 (y-1)^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionCoeffs {
    pub c0: f64,
    pub a1: f64,
    pub a2: f64,
    pub b1: f64,
    pub b2: f64,
}

/// Second-order Taylor coefficients of `(1 + f(y)/gamma r_e)^{-1}` and its square.
pub fn generalized_coeffs(coupling: &CouplingSpec) -> Result<ExpansionCoeffs> {
    let g = coupling.gamma * coupling.r_e;
    let [f0, f1, f2] = coupling.f_derivatives;
    let den = g + f0;
    if !den.is_finite() || den.abs() <= 1e-12 * g.abs() {
        return Err(Error::SingularExpansion);
    }
    let curvature = g * f2 + f0 * f2;
    Ok(ExpansionCoeffs {
        c0: g / den,
        a1: -g * f1 / (den * den),
        a2: -g * (curvature - 2.0 * f1 * f1) / (2.0 * den * den * den),
        b1: -2.0 * g * g * f1 / (den * den * den),
        b2: -g * g * (curvature - 3.0 * f1 * f1) / (den * den * den * den),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MapOptions {
    /// Drop the cubic remainder by setting `a2 = 0`.
    pub drop_a2: bool,
}

/// The mapped one-dimensional problem.
#[derive(Debug, Clone)]
pub struct MappedProblem {
    pub coupling: CouplingSpec,
    pub params: OscillatorParams,
    pub channel: SpinAngularChannel,
    pub coeffs: ExpansionCoeffs,
    /// eV
    pub a1_const: f64,
    /// eV
    pub a2_const: f64,
    /// eV
    pub a3_const: f64,
}

impl MappedProblem {
    fn gamma(&self) -> f64 {
        self.coupling.gamma
    }

    /// `A1 gamma^2 [U + A2/(2 gamma A1)]^2 + A3 - A2^2/(4 A1) - (hbar w/2) U'`.
    pub fn effective_potential(&self, r: f64) -> f64 {
        let g = self.gamma();
        let u = self.coupling.value(r);
        let shift = u + self.a2_const / (2.0 * g * self.a1_const);
        self.a1_const * g * g * shift * shift + self.a3_const
            - self.a2_const * self.a2_const / (4.0 * self.a1_const)
            - 0.5 * self.params.hbar_omega * self.coupling.derivative(r)
    }

    /// The same potential assembled term by term, `A1 (gamma U)^2 + A2 gamma U + A3 - (hbar w/2) U'`.
    pub fn assembled_potential(&self, r: f64) -> f64 {
        let w = self.gamma() * self.coupling.value(r);
        self.a1_const * w * w + self.a2_const * w + self.a3_const
            - 0.5 * self.params.hbar_omega * self.coupling.derivative(r)
    }

    /// Cubic remainder `-(1+f) (hbar w/(gamma r_e)) a2 (gamma U)^3`.
    pub fn cubic_term(&self, r: f64) -> f64 {
        let w = self.gamma() * self.coupling.value(r);
        -(1.0 + self.channel.f()) * self.params.hbar_omega * self.coeffs.a2 / (self.gamma() * self.coupling.r_e)
            * w
            * w
            * w
    }

    /// Effective potential plus the cubic remainder.
    pub fn expanded_potential(&self, r: f64) -> f64 {
        self.effective_potential(r) + self.cubic_term(r)
    }

    /// Unexpanded radial potential with the explicit `U/r` and `1/r^2` terms.
    pub fn radial_potential(&self, r: f64) -> f64 {
        let p = &self.params;
        let u = self.coupling.value(r);
        let k = p.m_omega_over_hbar() * p.hbar_omega;
        let ll = (self.channel.l * (self.channel.l + 1)) as f64;
        0.5 * k * u * u
            - 0.5 * p.hbar_omega * self.coupling.derivative(r)
            - (1.0 + self.channel.f()) * p.hbar_omega * u / r
            + p.kinetic_prefactor() * ll / (r * r)
    }

    /// Coefficients `(Q2, Q1, Q0)` of the mapped potential written as
    /// `Q2 U^2 + Q1 U + Q0 - (hbar w/2) U'`.
    pub fn quadratic_coefficients(&self) -> (f64, f64, f64) {
        let g = self.gamma();
        (self.a1_const * g * g, self.a2_const * g, self.a3_const)
    }
}

/// Builds the mapping constants
/// `A1 = m w^2/2gamma^2 - (1+f) hbar w a1/(gamma r_e) + L b2`,
/// `A2 = -(1+f) hbar w c0/(gamma r_e) + L b1`, `A3 = L c0^2`
/// with `L = hbar^2 l(l+1)/(2 m r_e^2)`.
///
/// `gamma` and `r_e` are taken from the coupling; `params` supplies the mass,
/// the oscillator quantum and `hbar c`.
pub fn pekeris_map(
    coupling: &CouplingSpec,
    params: &OscillatorParams,
    channel: &SpinAngularChannel,
    options: MapOptions,
) -> Result<MappedProblem> {
    let mut coeffs = generalized_coeffs(coupling)?;
    if options.drop_a2 {
        coeffs.a2 = 0.0;
    }
    let g = coupling.gamma;
    let r_e = coupling.r_e;
    let f1 = 1.0 + channel.f();
    let ll = (channel.l * (channel.l + 1)) as f64;
    let centrifugal = params.kinetic_prefactor() * ll / (r_e * r_e);
    let depth = params.m_omega_over_hbar() * params.hbar_omega / (2.0 * g * g);
    let hw = params.hbar_omega;
    let a1_const = depth - f1 * hw * coeffs.a1 / (g * r_e) + centrifugal * coeffs.b2;
    if a1_const == 0.0 {
        return Err(Error::Domain("mapped constant A1 vanishes".into()));
    }
    Ok(MappedProblem {
        coupling: coupling.clone(),
        params: *params,
        channel: *channel,
        coeffs,
        a1_const,
        a2_const: -f1 * hw * coeffs.c0 / (g * r_e) + centrifugal * coeffs.b1,
        a3_const: centrifugal * coeffs.c0 * coeffs.c0,
    })
}
