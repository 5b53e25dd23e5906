//! Couplings closed under the Pekeris mapping: solutions of
//! `dU/dr = a2 U^2 + a1 U + a0` with constant coefficients, their
//! classification, and the factorized non-minimal form of the mapped problem.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numerics::{derivative7, second_derivative5};
use crate::pekeris::{CouplingFunction, CouplingSpec, EffectiveMorse, MappedProblem};

/// Residual threshold separating family members from outsiders.
pub const CLOSURE_TOLERANCE: f64 = 1e-8;

/// Which branch of the negative-discriminant solution to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Sheet {
    /// `(U - u_a)/(U - u_b) = e^{K + sigma r}`; has a pole where the exponent vanishes.
    #[default]
    Singular,
    /// `(U - u_a)/(U - u_b) = -e^{K + sigma r}`; bounded between the fixed points.
    Regular,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiccatiSpec {
    pub quadratic: f64,
    pub linear: f64,
    pub constant: f64,
    /// Integration constant.
    pub k: f64,
    pub sheet: Sheet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RiccatiFamily {
    /// `a2 != 0`, discriminant > 0.
    Trigonometric,
    /// `a2 != 0`, discriminant = 0.
    Rational,
    /// `a2 != 0` with discriminant < 0, or `a2 = 0` with `a1 != 0`.
    ExponentialHyperbolic,
    /// `a2 = a1 = 0`.
    Affine,
}

impl RiccatiFamily {
    pub fn label(self) -> &'static str {
        match self {
            RiccatiFamily::Trigonometric => "trigonometric",
            RiccatiFamily::Rational => "rational",
            RiccatiFamily::ExponentialHyperbolic => "exponential_hyperbolic",
            RiccatiFamily::Affine => "affine",
        }
    }
}

impl RiccatiSpec {
    pub fn new(quadratic: f64, linear: f64, constant: f64, k: f64) -> Self {
        Self {
            quadratic,
            linear,
            constant,
            k,
            sheet: Sheet::Singular,
        }
    }

    pub fn with_sheet(self, sheet: Sheet) -> Self {
        Self { sheet, ..self }
    }

    /// `4 a0 a2 - a1^2`.
    pub fn discriminant(&self) -> f64 {
        4.0 * self.constant * self.quadratic - self.linear * self.linear
    }

    fn discriminant_is_zero(&self) -> bool {
        let scale = self.linear * self.linear + (4.0 * self.constant * self.quadratic).abs();
        self.discriminant().abs() <= 1e-14 * scale
    }

    pub fn family(&self) -> RiccatiFamily {
        if self.quadratic != 0.0 {
            if self.discriminant_is_zero() {
                RiccatiFamily::Rational
            } else if self.discriminant() > 0.0 {
                RiccatiFamily::Trigonometric
            } else {
                RiccatiFamily::ExponentialHyperbolic
            }
        } else if self.linear != 0.0 {
            RiccatiFamily::ExponentialHyperbolic
        } else {
            RiccatiFamily::Affine
        }
    }

    /// Right-hand side `a2 U^2 + a1 U + a0`.
    pub fn rhs(&self, u: f64) -> f64 {
        (self.quadratic * u + self.linear) * u + self.constant
    }

    fn validate(&self) -> Result<()> {
        if [self.quadratic, self.linear, self.constant, self.k]
            .iter()
            .all(|v| v.is_finite())
        {
            Ok(())
        } else {
            Err(Error::InvalidParameter("Riccati coefficients must be finite".into()))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Form {
    /// `(s tan(s (r+K)/2) - a1)/(2 a2)`
    Tangent { s: f64 },
    /// `-a1/(2 a2) + 1/(-a2 r - K)`
    Rational,
    /// fixed points `u_a`, `u_b`, rate `sigma`
    Hyperbolic { u_a: f64, u_b: f64, sigma: f64 },
    /// `K e^{a1 r} - a0/a1`
    Exponential,
    /// `a0 r + K`
    Affine,
}

/// Closed-form solution of a [`RiccatiSpec`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiccatiSolution {
    pub spec: RiccatiSpec,
    pub family: RiccatiFamily,
    form: Form,
    /// Open interval between consecutive singularities used for inversion.
    domain: (f64, f64),
}

/// Abscissae closer than this (relative to the period or scale) to a pole are refused.
const POLE_GUARD: f64 = 1e-9;

impl RiccatiSolution {
    /// Short identifier of the closed form.
    pub fn form_name(&self) -> &'static str {
        match self.form {
            Form::Tangent { .. } => "tangent",
            Form::Rational => "rational",
            Form::Hyperbolic { .. } => match self.spec.sheet {
                Sheet::Singular => "quotient_exponential",
                Sheet::Regular => "hyperbolic_tangent",
            },
            Form::Exponential => "exponential",
            Form::Affine => "affine",
        }
    }

    /// Human-readable closed form.
    pub fn expression(&self) -> String {
        let RiccatiSpec {
            quadratic: a2,
            linear: a1,
            constant: a0,
            k,
            ..
        } = self.spec;
        match self.form {
            Form::Tangent { s } => format!("({s} tan({s}(r + {k})/2) - {a1})/(2*{a2})"),
            Form::Rational => format!("{} + 1/(-{a2} r - {k})", -a1 / (2.0 * a2)),
            Form::Hyperbolic { u_a, u_b, sigma } => match self.spec.sheet {
                Sheet::Singular => format!("({u_a} - {u_b} E)/(1 - E), E = exp({k} + {sigma} r)"),
                Sheet::Regular => format!("({u_a} + {u_b} E)/(1 + E), E = exp({k} + {sigma} r)"),
            },
            Form::Exponential => format!("{k} exp({a1} r) - {}", a0 / a1),
            Form::Affine => format!("{a0} r + {k}"),
        }
    }

    /// Singular abscissae within `[lo, hi]`.
    pub fn poles_in(&self, lo: f64, hi: f64) -> Vec<f64> {
        let k = self.spec.k;
        match self.form {
            Form::Tangent { s } => {
                // s (r + K)/2 = pi/2 + n pi
                let first = ((s * (lo + k) / 2.0 - PI / 2.0) / PI).ceil() as i64;
                let last = ((s * (hi + k) / 2.0 - PI / 2.0) / PI).floor() as i64;
                (first..=last).map(|n| (PI + 2.0 * PI * n as f64) / s - k).collect()
            }
            Form::Rational => {
                let p = -k / self.spec.quadratic;
                if (lo..=hi).contains(&p) {
                    vec![p]
                } else {
                    vec![]
                }
            }
            Form::Hyperbolic { sigma, .. } if self.spec.sheet == Sheet::Singular => {
                let p = -k / sigma;
                if (lo..=hi).contains(&p) {
                    vec![p]
                } else {
                    vec![]
                }
            }
            _ => vec![],
        }
    }

    /// Distance scale used to decide how close to a pole an abscissa may be.
    fn pole_scale(&self) -> f64 {
        match self.form {
            Form::Tangent { s } => 2.0 * PI / s,
            Form::Rational => 1.0 / self.spec.quadratic.abs().max(f64::MIN_POSITIVE),
            Form::Hyperbolic { sigma, .. } => 1.0 / sigma.abs(),
            _ => 1.0,
        }
    }

    /// `U(r)`, refusing abscissae at a singularity.
    pub fn eval(&self, r: f64) -> Result<f64> {
        let guard = POLE_GUARD * self.pole_scale();
        if let Some(&pole) = self.poles_in(r - guard, r + guard).first() {
            return Err(Error::Singularity {
                at: r,
                pole,
                distance: (r - pole).abs(),
            });
        }
        Ok(self.value_unchecked(r))
    }

    fn value_unchecked(&self, r: f64) -> f64 {
        let RiccatiSpec {
            quadratic: a2,
            linear: a1,
            constant: a0,
            k,
            sheet,
        } = self.spec;
        match self.form {
            Form::Tangent { s } => (s * (s * (r + k) / 2.0).tan() - a1) / (2.0 * a2),
            Form::Rational => -a1 / (2.0 * a2) + 1.0 / (-a2 * r - k),
            Form::Hyperbolic { u_a, u_b, sigma } => {
                let x = k + sigma * r;
                match sheet {
                    Sheet::Singular => {
                        // (u_a - u_b E)/(1 - E) = u_b + (u_a - u_b)/(1 - E)
                        u_b - (u_a - u_b) / x.exp_m1()
                    }
                    Sheet::Regular => {
                        // (u_a + u_b E)/(1 + E), written with a logistic weight
                        let w = if x > 0.0 {
                            1.0 / (1.0 + (-x).exp())
                        } else {
                            let e = x.exp();
                            e / (1.0 + e)
                        };
                        u_a + (u_b - u_a) * w
                    }
                }
            }
            Form::Exponential => k * (a1 * r).exp() - a0 / a1,
            Form::Affine => a0 * r + k,
        }
    }

    /// Interval used for inversion.
    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    /// Same solution with the inversion interval set to the regular
    /// interval containing `r_ref`.
    pub fn around(mut self, r_ref: f64) -> Result<Self> {
        self.domain = regular_interval(&self, r_ref)?;
        Ok(self)
    }

    /// `r` in the inversion interval with `U(r) = u`.
    pub fn inverse(&self, u: f64) -> Result<f64> {
        let RiccatiSpec {
            quadratic: a2,
            linear: a1,
            constant: a0,
            k,
            sheet,
        } = self.spec;
        let out_of_range = || Error::Domain(format!("U = {u} is not attained by the {} solution", self.form_name()));
        let r = match self.form {
            Form::Tangent { s } => {
                let (lo, hi) = self.domain;
                let mid = 0.5 * (lo + hi);
                let n = ((s * (mid + k) / 2.0 + PI / 2.0) / PI).floor();
                let theta = ((2.0 * a2 * u + a1) / s).atan() + n * PI;
                2.0 * theta / s - k
            }
            Form::Rational => {
                let v = u + a1 / (2.0 * a2);
                if v == 0.0 {
                    return Err(out_of_range());
                }
                -(k + 1.0 / v) / a2
            }
            Form::Hyperbolic { u_a, u_b, sigma } => {
                let ratio = (u - u_a) / (u - u_b);
                let e = match sheet {
                    Sheet::Singular => ratio,
                    Sheet::Regular => -ratio,
                };
                if !(e > 0.0 && e.is_finite()) {
                    return Err(out_of_range());
                }
                (e.ln() - k) / sigma
            }
            Form::Exponential => {
                let ratio = (u + a0 / a1) / k;
                if !(ratio > 0.0 && ratio.is_finite()) {
                    return Err(out_of_range());
                }
                ratio.ln() / a1
            }
            Form::Affine => {
                if a0 == 0.0 {
                    return Err(out_of_range());
                }
                (u - k) / a0
            }
        };
        let (lo, hi) = self.domain;
        if !(r > lo && r < hi) {
            return Err(Error::Domain(format!(
                "U = {u} is attained at r = {r}, outside the interval ({lo}, {hi})"
            )));
        }
        Ok(r)
    }

    /// Wraps the solution as a coupling for the Pekeris mapping.
    pub fn coupling(&self, gamma: f64, r_e: f64) -> Result<CouplingSpec> {
        CouplingSpec::from_function(self.form_name(), Arc::new(*self), gamma, r_e)
    }
}

impl CouplingFunction for RiccatiSolution {
    fn value(&self, r: f64) -> f64 {
        self.value_unchecked(r)
    }
    fn derivative(&self, r: f64) -> f64 {
        self.spec.rhs(self.value_unchecked(r))
    }
    fn second_derivative(&self, r: f64) -> f64 {
        let u = self.value_unchecked(r);
        (2.0 * self.spec.quadratic * u + self.spec.linear) * self.spec.rhs(u)
    }
    fn inverse(&self, u: f64) -> Result<f64> {
        RiccatiSolution::inverse(self, u)
    }
    fn domain(&self) -> (f64, f64) {
        self.domain
    }
}

fn regular_interval(sol: &RiccatiSolution, r_ref: f64) -> Result<(f64, f64)> {
    let k = sol.spec.k;
    match sol.form {
        Form::Tangent { s } => {
            let n = ((s * (r_ref + k) / 2.0 + PI / 2.0) / PI).floor();
            let lo = (2.0 * n * PI - PI) / s - k;
            let hi = (2.0 * n * PI + PI) / s - k;
            Ok((lo, hi))
        }
        Form::Rational | Form::Hyperbolic { .. } => match sol.poles_in(f64::MIN, f64::MAX).first() {
            Some(&p) if r_ref < p => Ok((f64::NEG_INFINITY, p)),
            Some(&p) if r_ref > p => Ok((p, f64::INFINITY)),
            Some(&p) => Err(Error::Singularity {
                at: r_ref,
                pole: p,
                distance: 0.0,
            }),
            None => Ok((f64::NEG_INFINITY, f64::INFINITY)),
        },
        _ => Ok((f64::NEG_INFINITY, f64::INFINITY)),
    }
}

/// Closed-form solution of the Riccati equation, inverted on the regular
/// interval that contains `r = 0` (or lies just right of a pole at 0).
pub fn solve_riccati(spec: RiccatiSpec) -> Result<RiccatiSolution> {
    spec.validate()?;
    let family = spec.family();
    let RiccatiSpec {
        quadratic: a2,
        linear: a1,
        constant: a0,
        ..
    } = spec;
    let form = match family {
        RiccatiFamily::Trigonometric => Form::Tangent {
            s: spec.discriminant().sqrt(),
        },
        RiccatiFamily::Rational => Form::Rational,
        RiccatiFamily::ExponentialHyperbolic if a2 != 0.0 => {
            let root = (-spec.discriminant()).sqrt();
            let signed = a2.signum() * root;
            Form::Hyperbolic {
                u_a: (-a1 + signed) / (2.0 * a2),
                u_b: (-a1 - signed) / (2.0 * a2),
                sigma: signed,
            }
        }
        RiccatiFamily::ExponentialHyperbolic => Form::Exponential,
        RiccatiFamily::Affine => {
            let _ = a0;
            Form::Affine
        }
    };
    let mut sol = RiccatiSolution {
        spec,
        family,
        form,
        domain: (f64::NEG_INFINITY, f64::INFINITY),
    };
    let reference = match sol.poles_in(-1e-300, 1e-300).first() {
        Some(_) => 1e-6 * sol.pole_scale(),
        None => 0.0,
    };
    sol.domain = regular_interval(&sol, reference)?;
    Ok(sol)
}

/// Rows of the characteristic coupling table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Table4Kind {
    /// `(1, 0, 1)`: `tan(r + K)`.
    Tangent { k: f64 },
    /// `(0, a, a)`: `K e^{a r} - 1`, `a < 0`.
    Morse { a: f64, k: f64 },
    /// `(a2, 0, 0)`: `(-a2 r - K)^{-1}`, `a2 != 0`.
    Coulomb { a2: f64, k: f64 },
    /// `(0, 0, a0)`: `a0 r + K`, `a0 > 0`.
    Harmonic { a0: f64, k: f64 },
    /// `(a2, a2, 0)`: `-e^{K + a2 r}/(e^{K + a2 r} - 1)`, `a2 != 0`.
    QuotientExponential { a2: f64, k: f64 },
}

/// Coefficients and closed form of a table row, with its sign constraints enforced.
pub fn table4_coupling(kind: Table4Kind) -> Result<(RiccatiSpec, RiccatiSolution)> {
    let violation = |msg: &str| Err(Error::InvalidParameter(msg.to_string()));
    let spec = match kind {
        Table4Kind::Tangent { k } => RiccatiSpec::new(1.0, 0.0, 1.0, k),
        Table4Kind::Morse { a, k } => {
            if !(a < 0.0) {
                return violation("Morse row needs a < 0");
            }
            RiccatiSpec::new(0.0, a, a, k)
        }
        Table4Kind::Coulomb { a2, k } => {
            if a2 == 0.0 {
                return violation("Coulomb row needs a2 != 0");
            }
            RiccatiSpec::new(a2, 0.0, 0.0, k)
        }
        Table4Kind::Harmonic { a0, k } => {
            if !(a0 > 0.0) {
                return violation("harmonic row needs a0 > 0");
            }
            RiccatiSpec::new(0.0, 0.0, a0, k)
        }
        Table4Kind::QuotientExponential { a2, k } => {
            if a2 == 0.0 {
                return violation("quotient exponential row needs a2 != 0");
            }
            RiccatiSpec::new(a2, a2, 0.0, k)
        }
    };
    Ok((spec, solve_riccati(spec)?))
}

/// Outcome of [`verify_ode`].
#[derive(Debug, Clone, PartialEq)]
pub struct OdeResidual {
    /// Largest `|dU/dr - rhs(U)| / max(1, |rhs(U)|)`.
    pub max_residual: f64,
    pub checked: usize,
    /// Sample points sitting on a singularity.
    pub skipped: Vec<f64>,
}

/// Max over the sample of the relative mismatch between a seven-point
/// central derivative of `u` and `a2 U^2 + a1 U + a0`. `pole_distance`
/// returns the distance from `r` to the nearest singularity; the stencil
/// shrinks near one, and points on a singularity are skipped and reported.
pub fn verify_ode(
    u: &dyn Fn(f64) -> f64,
    spec: &RiccatiSpec,
    sample: &[f64],
    pole_distance: &dyn Fn(f64) -> f64,
) -> OdeResidual {
    let mut max_residual: f64 = 0.0;
    let mut skipped = Vec::new();
    let mut checked = 0;
    for &r in sample {
        let distance = pole_distance(r);
        let scale = 1.0 + r.abs();
        if distance < 1e-9 * scale {
            skipped.push(r);
            continue;
        }
        let h = (1e-3 * scale).min(distance / 100.0);
        let value = u(r);
        let d = derivative7(u, r, h);
        if !(value.is_finite() && d.is_finite()) {
            skipped.push(r);
            continue;
        }
        let rhs = spec.rhs(value);
        max_residual = max_residual.max((d - rhs).abs() / rhs.abs().max(1.0));
        checked += 1;
    }
    OdeResidual {
        max_residual,
        checked,
        skipped,
    }
}

/// [`verify_ode`] applied to a solution, using its own poles.
pub fn verify_solution(sol: &RiccatiSolution, spec: &RiccatiSpec, sample: &[f64]) -> OdeResidual {
    let u = |r: f64| sol.value_unchecked(r);
    let distance = |r: f64| {
        let reach = sol.pole_scale();
        sol.poles_in(r - reach, r + reach)
            .iter()
            .map(|p| (r - p).abs())
            .fold(f64::INFINITY, f64::min)
    };
    verify_ode(&u, spec, sample, &distance)
}

/// Constants of `K1 (U - K2)^2 + K3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorizedForm {
    /// eV/Å²
    pub k1: f64,
    /// Å
    pub k2: f64,
    /// eV
    pub k3: f64,
}

impl FactorizedForm {
    pub fn potential(&self, u: f64) -> f64 {
        self.k1 * (u - self.k2).powi(2) + self.k3
    }

    /// Superpotential `W c = sqrt(2 m c^2 K1)(U - K2)` (eV).
    pub fn superpotential(&self, u: f64, mass: f64) -> f64 {
        (2.0 * mass * self.k1).sqrt() * (u - self.k2)
    }

    /// Applies `[(hbar d/dr + W)(-hbar d/dr + W)/2m + K3] phi` numerically.
    pub fn apply_factorized(
        &self,
        coupling: &dyn Fn(f64) -> f64,
        phi: &dyn Fn(f64) -> f64,
        r: f64,
        mass: f64,
        hbar_c: f64,
        h: f64,
    ) -> f64 {
        let w = |x: f64| self.superpotential(coupling(x), mass);
        let xi = |x: f64| w(x) * phi(x) - hbar_c * derivative7(phi, x, h);
        (hbar_c * derivative7(xi, r, h) + w(r) * xi(r)) / (2.0 * mass) + self.k3 * phi(r)
    }

    /// Expanded operator `-hbar^2/2m phi'' + [K1(U-K2)^2 + K3 + hbar sqrt(K1/2m) U'] phi`.
    #[allow(clippy::too_many_arguments)]
    pub fn apply_expanded(
        &self,
        coupling: &dyn Fn(f64) -> f64,
        coupling_derivative: &dyn Fn(f64) -> f64,
        phi: &dyn Fn(f64) -> f64,
        r: f64,
        mass: f64,
        hbar_c: f64,
        h: f64,
    ) -> f64 {
        let cross = hbar_c * (self.k1 / (2.0 * mass)).sqrt() * coupling_derivative(r);
        -hbar_c * hbar_c / (2.0 * mass) * second_derivative5(phi, r, h) + (self.potential(coupling(r)) + cross) * phi(r)
    }
}

/// Problems that [`factorize`] accepts.
pub enum Factorizable<'a> {
    Mapped(&'a MappedProblem),
    Morse(&'a EffectiveMorse),
}

/// Rewrites the mapped potential as `K1 (U - K2)^2 + K3` using the Riccati
/// relation to absorb the `dU/dr` term. Fails with a closure error when the
/// coupling does not satisfy `spec` on a sample around its root.
pub fn factorize(problem: Factorizable<'_>, spec: &RiccatiSpec) -> Result<FactorizedForm> {
    match problem {
        Factorizable::Morse(m) => {
            let k = 1.0 - m.constants.b / (2.0 * m.constants.a);
            let d = m.depth();
            Ok(FactorizedForm {
                k1: d * m.gamma * m.gamma / (k * k),
                k2: (k - 1.0) / m.gamma,
                k3: m.u0,
            })
        }
        Factorizable::Mapped(mp) => {
            let coupling = &mp.coupling;
            let root = coupling.root()?;
            let (lo, hi) = coupling.domain();
            let span = 0.2 * coupling.r_e;
            let sample: Vec<f64> = (0..100)
                .map(|i| root - span + 2.0 * span * i as f64 / 99.0)
                .filter(|r| *r > lo && *r < hi)
                .collect();
            let u = |r: f64| coupling.value(r);
            let smooth = |_: f64| f64::INFINITY;
            let check = verify_ode(&u, spec, &sample, &smooth);
            if !(check.max_residual <= CLOSURE_TOLERANCE) || check.checked == 0 {
                return Err(Error::ClosureFailure {
                    residual: check.max_residual,
                    tolerance: CLOSURE_TOLERANCE,
                });
            }
            let half = 0.5 * mp.params.hbar_omega;
            let (q2, q1, q0) = mp.quadratic_coefficients();
            let q2 = q2 - half * spec.quadratic;
            let q1 = q1 - half * spec.linear;
            let q0 = q0 - half * spec.constant;
            if q2 == 0.0 {
                return Err(Error::Domain("mapped potential has no quadratic term in U".into()));
            }
            Ok(FactorizedForm {
                k1: q2,
                k2: -q1 / (2.0 * q2),
                k3: q0 - q1 * q1 / (4.0 * q2),
            })
        }
    }
}

/// Bound levels of a mapped Moebius (rational) coupling
/// `U = u_inf + q/(r - r_pole)`, for which `K1 (U - K2)^2 + K3` is a
/// Coulomb plus centrifugal problem in `rho = r - r_pole`:
/// `E_n = K1 (u_inf - K2)^2 + K3 - m Z^2 / (2 hbar^2 (n + lambda + 1)^2)` with
/// `lambda(lambda+1) = 2 m K1 q^2/hbar^2` and `Z = -2 K1 (u_inf - K2) q`.
pub fn confluent_levels(
    form: &FactorizedForm,
    u_inf: f64,
    q: f64,
    mass: f64,
    hbar_c: f64,
    count: usize,
) -> Result<Vec<f64>> {
    let lam_prod = 2.0 * mass * form.k1 * q * q / (hbar_c * hbar_c);
    if !(lam_prod >= 0.0) {
        return Err(Error::Domain(format!("centrifugal strength {lam_prod} must be >= 0")));
    }
    let lambda = 0.5 * (-1.0 + (1.0 + 4.0 * lam_prod).sqrt());
    let z = -2.0 * form.k1 * (u_inf - form.k2) * q;
    if !(z > 0.0) {
        return Err(Error::Domain(format!(
            "Coulomb strength {z} must be > 0 for bound states"
        )));
    }
    let threshold = form.k1 * (u_inf - form.k2).powi(2) + form.k3;
    Ok((0..count)
        .map(|n| {
            let nn = n as f64 + lambda + 1.0;
            threshold - mass * z * z / (2.0 * hbar_c * hbar_c * nn * nn)
        })
        .collect())
}
