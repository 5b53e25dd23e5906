//! Invertible spherical couplings `U(r)` and the expansion function
//! `f(x) = gamma U^{-1}((x-1)/gamma) - gamma r_e` they induce.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numerics::{bisect, CubicSpline};

/// An evaluable coupling. Implementations must be callable from many threads.
pub trait CouplingFunction: Send + Sync {
    fn value(&self, r: f64) -> f64;
    fn derivative(&self, r: f64) -> f64;
    fn second_derivative(&self, r: f64) -> f64;
    /// `r` in [`domain`](Self::domain) with `U(r) = u`.
    fn inverse(&self, u: f64) -> Result<f64>;
    /// Open interval on which the coupling is smooth and invertible.
    fn domain(&self) -> (f64, f64);
}

/// A coupling together with the deformation and reference radius that define `f`.
#[derive(Clone)]
pub struct CouplingSpec {
    pub name: String,
    pub function: Arc<dyn CouplingFunction>,
    /// 1/Å
    pub gamma: f64,
    /// Å
    pub r_e: f64,
    /// `f(1)`, `f'(1)`, `f''(1)`.
    pub f_derivatives: [f64; 3],
}

impl fmt::Debug for CouplingSpec {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        fm.debug_struct("CouplingSpec")
            .field("name", &self.name)
            .field("gamma", &self.gamma)
            .field("r_e", &self.r_e)
            .field("f_derivatives", &self.f_derivatives)
            .finish()
    }
}

impl CouplingSpec {
    /// Wraps a coupling, deriving `f(1)`, `f'(1)`, `f''(1)` from `U` at `r0 = U^{-1}(0)`:
    /// `f(1) = gamma (r0 - r_e)`, `f'(1) = 1/U'(r0)`, `f''(1) = -U''(r0)/(gamma U'(r0)^3)`.
    pub fn from_function(
        name: impl Into<String>,
        function: Arc<dyn CouplingFunction>,
        gamma: f64,
        r_e: f64,
    ) -> Result<Self> {
        if !(gamma.is_finite() && gamma != 0.0) {
            return Err(Error::InvalidParameter(format!(
                "coupling gamma must be finite and non-zero, got {gamma}"
            )));
        }
        let r0 = function.inverse(0.0)?;
        let d1 = function.derivative(r0);
        let d2 = function.second_derivative(r0);
        if !(d1.is_finite() && d1 != 0.0) {
            return Err(Error::InvalidParameter(format!(
                "coupling is not invertible at its root r = {r0} (dU/dr = {d1})"
            )));
        }
        Ok(Self {
            name: name.into(),
            function,
            gamma,
            r_e,
            f_derivatives: [gamma * (r0 - r_e), 1.0 / d1, -d2 / (gamma * d1 * d1 * d1)],
        })
    }

    pub fn value(&self, r: f64) -> f64 {
        self.function.value(r)
    }

    pub fn derivative(&self, r: f64) -> f64 {
        self.function.derivative(r)
    }

    pub fn second_derivative(&self, r: f64) -> f64 {
        self.function.second_derivative(r)
    }

    pub fn inverse(&self, u: f64) -> Result<f64> {
        self.function.inverse(u)
    }

    pub fn domain(&self) -> (f64, f64) {
        self.function.domain()
    }

    /// Root `r0 = U^{-1}(0)`, the expansion point `y = 1`.
    pub fn root(&self) -> Result<f64> {
        self.inverse(0.0)
    }

    /// `f(x) = gamma U^{-1}((x-1)/gamma) - gamma r_e`.
    pub fn f(&self, x: f64) -> Result<f64> {
        Ok(self.gamma * self.inverse((x - 1.0) / self.gamma)? - self.gamma * self.r_e)
    }

    /// `y = gamma U(r) + 1`.
    pub fn y(&self, r: f64) -> f64 {
        self.gamma * self.value(r) + 1.0
    }
}

struct Morse {
    gamma: f64,
    r_e: f64,
}

impl CouplingFunction for Morse {
    fn value(&self, r: f64) -> f64 {
        (self.gamma * (r - self.r_e)).exp_m1() / self.gamma
    }
    fn derivative(&self, r: f64) -> f64 {
        (self.gamma * (r - self.r_e)).exp()
    }
    fn second_derivative(&self, r: f64) -> f64 {
        self.gamma * (self.gamma * (r - self.r_e)).exp()
    }
    fn inverse(&self, u: f64) -> Result<f64> {
        let gu = self.gamma * u;
        if !(gu > -1.0) {
            return Err(Error::Domain(format!("Morse coupling never reaches U = {u}")));
        }
        Ok(self.r_e + gu.ln_1p() / self.gamma)
    }
    fn domain(&self) -> (f64, f64) {
        (f64::NEG_INFINITY, f64::INFINITY)
    }
}

/// `U(r) = (e^{gamma(r - r_e)} - 1)/gamma`, with `f(x) = ln x`.
pub fn morse(gamma: f64, r_e: f64) -> Result<CouplingSpec> {
    if !(gamma.is_finite() && gamma != 0.0 && r_e > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "Morse coupling needs gamma != 0 and r_e > 0, got ({gamma}, {r_e})"
        )));
    }
    Ok(CouplingSpec {
        name: "morse".into(),
        function: Arc::new(Morse { gamma, r_e }),
        gamma,
        r_e,
        f_derivatives: [0.0, 1.0, -1.0],
    })
}

struct LennardJones {
    gamma: f64,
}

const SQRT2: f64 = std::f64::consts::SQRT_2;

impl CouplingFunction for LennardJones {
    fn value(&self, r: f64) -> f64 {
        let x3 = (self.gamma * r).powi(-3);
        (x3 * x3 - SQRT2 * x3) / self.gamma
    }
    fn derivative(&self, r: f64) -> f64 {
        let x = self.gamma * r;
        -6.0 * x.powi(-7) + 3.0 * SQRT2 * x.powi(-4)
    }
    fn second_derivative(&self, r: f64) -> f64 {
        let x = self.gamma * r;
        self.gamma * (42.0 * x.powi(-8) - 12.0 * SQRT2 * x.powi(-5))
    }
    fn inverse(&self, u: f64) -> Result<f64> {
        // gamma u = s^2 - sqrt2 s with s = (gamma r)^-3 on the inner branch s >= sqrt2/2
        let disc = 2.0 + 4.0 * self.gamma * u;
        if disc < 0.0 {
            return Err(Error::Domain(format!(
                "12-6-9 coupling has minimum -1/(2 gamma); U = {u} is below it"
            )));
        }
        let s = 0.5 * (SQRT2 + disc.sqrt());
        Ok(s.powf(-1.0 / 3.0) / self.gamma)
    }
    fn domain(&self) -> (f64, f64) {
        (0.0, 2f64.powf(1.0 / 6.0) / self.gamma)
    }
}

/// 12-6-9 Lennard-Jones coupling `U = (1/gamma)[(gamma r)^-6 - sqrt2 (gamma r)^-3]`
/// with `gamma = 1/r_e`, inverted on the inner branch `r < 2^{1/6} r_e`.
pub fn lennard_jones_1269(r_e: f64) -> Result<CouplingSpec> {
    if !(r_e > 0.0 && r_e.is_finite()) {
        return Err(Error::InvalidParameter(format!("r_e must be > 0, got {r_e}")));
    }
    let gamma = 1.0 / r_e;
    // f(x) = (2/g(x))^{1/3} - 1 with g(x) = sqrt2 + sqrt(4x - 2)
    let g = 2.0 * SQRT2;
    let g1 = SQRT2;
    let g2 = -SQRT2;
    let c = 2f64.powf(1.0 / 3.0);
    let f0 = c * g.powf(-1.0 / 3.0) - 1.0;
    let f1 = -c / 3.0 * g.powf(-4.0 / 3.0) * g1;
    let f2 = c * (4.0 / 9.0 * g.powf(-7.0 / 3.0) * g1 * g1 - g.powf(-4.0 / 3.0) * g2 / 3.0);
    Ok(CouplingSpec {
        name: "lj1269".into(),
        function: Arc::new(LennardJones { gamma }),
        gamma,
        r_e,
        f_derivatives: [f0, f1, f2],
    })
}

struct Homographic {
    gamma: f64,
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    domain: (f64, f64),
}

impl CouplingFunction for Homographic {
    fn value(&self, r: f64) -> f64 {
        let x = self.gamma * r;
        (self.a * x + self.b) / (self.gamma * (self.c * x + self.d))
    }
    fn derivative(&self, r: f64) -> f64 {
        let den = self.c * self.gamma * r + self.d;
        (self.a * self.d - self.b * self.c) / (den * den)
    }
    fn second_derivative(&self, r: f64) -> f64 {
        let den = self.c * self.gamma * r + self.d;
        -2.0 * self.c * self.gamma * (self.a * self.d - self.b * self.c) / (den * den * den)
    }
    fn inverse(&self, u: f64) -> Result<f64> {
        let gu = self.gamma * u;
        let den = self.a - self.c * gu;
        if den == 0.0 {
            return Err(Error::Domain(format!(
                "homographic coupling never reaches U = {u} (asymptote)"
            )));
        }
        Ok((self.d * gu - self.b) / (den * self.gamma))
    }
    fn domain(&self) -> (f64, f64) {
        self.domain
    }
}

/// Homographic coupling `U = (1/gamma)(a gamma r + b)/(c gamma r + d)` with `gamma = 1/r_e`.
///
/// Its expansion function is `f(x) = (d(x-1) - b)/(a - c(x-1)) - 1`; `f(1) = 0`
/// requires `b = -a`, see [`homographic_centered`].
pub fn homographic(a: f64, b: f64, c: f64, d: f64, r_e: f64) -> Result<CouplingSpec> {
    let det = a * d - b * c;
    if det == 0.0 || ![a, b, c, d].iter().all(|v| v.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "homographic coupling needs finite coefficients with ad - bc != 0, got ad - bc = {det}"
        )));
    }
    if !(r_e > 0.0) {
        return Err(Error::InvalidParameter(format!("r_e must be > 0, got {r_e}")));
    }
    if a == 0.0 {
        return Err(Error::InvalidParameter(
            "homographic coupling with a = 0 has no root; f(1) is undefined".into(),
        ));
    }
    let gamma = 1.0 / r_e;
    // keep the branch between the pole and the side that contains r_e
    let domain = if c == 0.0 {
        (0.0, f64::INFINITY)
    } else {
        let pole = -d / (c * gamma);
        if pole <= 0.0 {
            (0.0, f64::INFINITY)
        } else if pole > r_e {
            (0.0, pole)
        } else {
            (pole, f64::INFINITY)
        }
    };
    let f0 = -b / a - 1.0;
    let f1 = det / (a * a);
    let f2 = 2.0 * c * det / (a * a * a);
    Ok(CouplingSpec {
        name: "homographic".into(),
        function: Arc::new(Homographic {
            gamma,
            a,
            b,
            c,
            d,
            domain,
        }),
        gamma,
        r_e,
        f_derivatives: [f0, f1, f2],
    })
}

/// Homographic coupling with `b = -a`, so that `U(r_e) = 0` and `f(1) = 0`.
pub fn homographic_centered(a: f64, c: f64, d: f64, r_e: f64) -> Result<CouplingSpec> {
    homographic(a, -a, c, d, r_e)
}

struct Tabulated {
    spline: CubicSpline,
    increasing: bool,
}

impl CouplingFunction for Tabulated {
    fn value(&self, r: f64) -> f64 {
        self.spline.eval(r)
    }
    fn derivative(&self, r: f64) -> f64 {
        self.spline.eval3(r).1
    }
    fn second_derivative(&self, r: f64) -> f64 {
        self.spline.eval3(r).2
    }
    fn inverse(&self, u: f64) -> Result<f64> {
        let (lo, hi) = self.spline.domain();
        let (u_lo, u_hi) = (self.spline.eval(lo), self.spline.eval(hi));
        let inside = if self.increasing {
            u_lo <= u && u <= u_hi
        } else {
            u_hi <= u && u <= u_lo
        };
        if !inside {
            return Err(Error::Domain(format!(
                "U = {u} is outside the tabulated range [{}, {}]",
                u_lo.min(u_hi),
                u_lo.max(u_hi)
            )));
        }
        bisect(|r| self.spline.eval(r) - u, lo, hi, 1e-15)
    }
    fn domain(&self) -> (f64, f64) {
        self.spline.domain()
    }
}

/// Coupling interpolated from `(r, U)` samples by a natural cubic spline.
/// The samples must be strictly monotone in `U`.
pub fn tabulated(rs: Vec<f64>, us: Vec<f64>, gamma: f64, r_e: f64) -> Result<CouplingSpec> {
    let increasing = us.len() > 1 && us[1] > us[0];
    if us.windows(2).any(|w| (w[1] > w[0]) != increasing || w[1] == w[0]) {
        return Err(Error::InvalidParameter(
            "tabulated coupling must be strictly monotone to be invertible".into(),
        ));
    }
    let spline = CubicSpline::new(rs, us)?;
    CouplingSpec::from_function("table", Arc::new(Tabulated { spline, increasing }), gamma, r_e)
}

/// Reads a two-column `r,U` CSV (optional header, `#` comments) into a tabulated coupling.
pub fn tabulated_from_csv(path: impl AsRef<Path>, gamma: f64, r_e: f64) -> Result<CouplingSpec> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let (mut rs, mut us) = (Vec::new(), Vec::new());
    let mut header_seen = false;
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split(',').map(str::trim).collect();
        if cols.len() != 2 {
            return Err(Error::Parse {
                line: idx + 1,
                message: format!("expected 2 columns, found {}", cols.len()),
            });
        }
        match (cols[0].parse::<f64>(), cols[1].parse::<f64>()) {
            (Ok(r), Ok(u)) => {
                rs.push(r);
                us.push(u);
            }
            // a non-numeric first row is a header
            _ if rs.is_empty() && !header_seen => header_seen = true,
            _ => {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: format!("cannot parse `{line}` as two numbers"),
                })
            }
        }
    }
    tabulated(rs, us, gamma, r_e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn morse_expansion_function_is_log() {
        let c = morse(-1.9, 0.74).unwrap();
        for x in [0.5, 0.9, 1.0, 1.3, 2.0] {
            assert_relative_eq!(c.f(x).unwrap(), f64::ln(x), epsilon = 1e-14);
        }
    }

    #[test]
    fn lj_root_is_potential_minimum() {
        let r_e = 1.2;
        let c = lennard_jones_1269(r_e).unwrap();
        assert_relative_eq!(c.root().unwrap(), r_e / 2f64.powf(1.0 / 6.0), max_relative = 1e-14);
        let numeric = CouplingSpec::from_function("lj", c.function.clone(), c.gamma, c.r_e).unwrap();
        for (a, b) in c.f_derivatives.iter().zip(numeric.f_derivatives) {
            assert_relative_eq!(*a, b, max_relative = 1e-12);
        }
    }

    #[test]
    fn homographic_collapses_to_identity() {
        let c = homographic(1.0, 0.0, 0.0, 1.0, 0.9).unwrap();
        for r in [0.1, 0.9, 3.0] {
            assert_relative_eq!(c.value(r), r, max_relative = 1e-15);
        }
        assert!(homographic(1.0, 2.0, 0.5, 1.0, 1.0).is_err());
    }

    #[test]
    fn couplings_invert() {
        let cs = [
            morse(-1.9, 0.74).unwrap(),
            lennard_jones_1269(1.0).unwrap(),
            homographic_centered(1.0, 0.5, 0.5, 0.74).unwrap(),
        ];
        for c in cs {
            let r0 = c.root().unwrap();
            for dr in [-0.05, 0.0, 0.04] {
                let r = r0 + dr * c.r_e;
                assert_relative_eq!(c.inverse(c.value(r)).unwrap(), r, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn tabulated_matches_source() {
        let src = morse(-1.5, 1.0).unwrap();
        let rs = crate::numerics::linspace(0.5, 2.0, 601);
        let us: Vec<f64> = rs.iter().map(|&r| src.value(r)).collect();
        let t = tabulated(rs, us, -1.5, 1.0).unwrap();
        assert_relative_eq!(t.root().unwrap(), 1.0, max_relative = 1e-9);
        assert_relative_eq!(t.f_derivatives[1], 1.0, max_relative = 1e-6);
        assert_relative_eq!(t.f_derivatives[2], -1.0, max_relative = 1e-3);
    }
}
