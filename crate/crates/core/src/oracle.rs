//! Finite-difference eigensolver for one-dimensional Schrödinger problems,
//! used to check every closed-form spectrum.
//!
//! `-(hbar^2/2m) psi'' + V psi = E psi` on a Dirichlet box is discretized with
//! second-order central differences; the lowest eigenvalues of the symmetric
//! tridiagonal matrix come from Sturm-sequence bisection and the
//! eigenvectors from inverse iteration.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

/// Smallest admissible grid, boundaries included.
pub const MIN_POINTS: usize = 201;
/// Relative amplitude an eigenfunction may keep next to the box edge.
pub const DECAY_TOLERANCE: f64 = 1e-8;

pub type Potential = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Discretized problem. `n_points` counts both boundary nodes, where the
/// wavefunction is pinned to zero.
#[derive(Clone)]
pub struct GridProblem {
    pub domain: (f64, f64),
    pub n_points: usize,
    pub potential: Potential,
    /// Rest energy (eV).
    pub mass: f64,
    /// eV·Å
    pub hbar_c: f64,
}

impl fmt::Debug for GridProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GridProblem")
            .field("domain", &self.domain)
            .field("n_points", &self.n_points)
            .field("mass", &self.mass)
            .field("hbar_c", &self.hbar_c)
            .finish_non_exhaustive()
    }
}

impl GridProblem {
    pub fn new(
        domain: (f64, f64),
        n_points: usize,
        potential: impl Fn(f64) -> f64 + Send + Sync + 'static,
        mass: f64,
        hbar_c: f64,
    ) -> Result<Self> {
        Self::with_potential(domain, n_points, Arc::new(potential), mass, hbar_c)
    }

    pub fn with_potential(
        domain: (f64, f64),
        n_points: usize,
        potential: Potential,
        mass: f64,
        hbar_c: f64,
    ) -> Result<Self> {
        let problem = Self {
            domain,
            n_points,
            potential,
            mass,
            hbar_c,
        };
        problem.validate()?;
        Ok(problem)
    }

    fn validate(&self) -> Result<()> {
        let (lo, hi) = self.domain;
        if !(lo.is_finite() && hi.is_finite() && hi > lo) {
            return Err(Error::Grid(format!("domain ({lo}, {hi}) must be finite and ordered")));
        }
        if self.n_points < MIN_POINTS {
            return Err(Error::Grid(format!(
                "n_points = {} is below the minimum of {MIN_POINTS}",
                self.n_points
            )));
        }
        if !(self.mass > 0.0 && self.hbar_c > 0.0) {
            return Err(Error::Grid("mass and hbar c must be > 0".into()));
        }
        Ok(())
    }

    pub fn step(&self) -> f64 {
        (self.domain.1 - self.domain.0) / (self.n_points - 1) as f64
    }

    /// Interior nodes, where the unknowns live.
    pub fn nodes(&self) -> Vec<f64> {
        let h = self.step();
        (1..self.n_points - 1).map(|i| self.domain.0 + h * i as f64).collect()
    }

    /// Same problem with the step halved.
    pub fn refined(&self) -> Self {
        Self {
            n_points: 2 * self.n_points - 1,
            ..self.clone()
        }
    }

    pub fn with_points(&self, n_points: usize) -> Result<Self> {
        let p = Self {
            n_points,
            ..self.clone()
        };
        p.validate()?;
        Ok(p)
    }

    fn matrix(&self) -> Result<Tridiagonal> {
        self.validate()?;
        let h = self.step();
        let kinetic = self.hbar_c * self.hbar_c / (2.0 * self.mass * h * h);
        let nodes = self.nodes();
        let mut diag = Vec::with_capacity(nodes.len());
        for &x in &nodes {
            let v = (self.potential)(x);
            if !v.is_finite() {
                return Err(Error::NonFinitePotential { at: x });
            }
            diag.push(2.0 * kinetic + v);
        }
        Ok(Tridiagonal { diag, off: -kinetic })
    }
}

/// Symmetric tridiagonal matrix with a constant off-diagonal.
struct Tridiagonal {
    diag: Vec<f64>,
    off: f64,
}

impl Tridiagonal {
    fn len(&self) -> usize {
        self.diag.len()
    }

    /// Number of eigenvalues strictly below `x`.
    fn count_below(&self, x: f64) -> usize {
        let e2 = self.off * self.off;
        let mut count = 0;
        let mut q = 1.0;
        for (i, &d) in self.diag.iter().enumerate() {
            q = if i == 0 { d - x } else { d - x - e2 / q };
            if q == 0.0 {
                q = -f64::EPSILON * (d.abs() + self.off.abs() + x.abs()).max(f64::MIN_POSITIVE);
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let r = 2.0 * self.off.abs();
        let lo = self.diag.iter().fold(f64::INFINITY, |m, &d| m.min(d - r));
        let hi = self.diag.iter().fold(f64::NEG_INFINITY, |m, &d| m.max(d + r));
        (lo, hi)
    }

    /// `k`-th smallest eigenvalue (0-based) by bisection to full precision.
    fn eigenvalue(&self, k: usize, bounds: (f64, f64)) -> f64 {
        let (mut lo, mut hi) = bounds;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Solves `(T - shift) x = rhs` by Gaussian elimination with partial pivoting.
    fn solve_shifted(&self, shift: f64, rhs: &[f64]) -> Vec<f64> {
        let n = self.len();
        let e = self.off;
        // rows after elimination: (main, super1, super2)
        let mut main = vec![0.0; n];
        let mut sup1 = vec![0.0; n];
        let mut sup2 = vec![0.0; n];
        let mut b = rhs.to_vec();
        let mut cur_main = self.diag[0] - shift;
        let mut cur_sup = if n > 1 { e } else { 0.0 };
        let tiny = f64::EPSILON * (self.diag.iter().fold(0.0f64, |m, d| m.max(d.abs())) + e.abs());
        for i in 0..n {
            if i + 1 == n {
                main[i] = if cur_main.abs() < tiny { tiny } else { cur_main };
                break;
            }
            let next_main = self.diag[i + 1] - shift;
            let next_sup = if i + 2 < n { e } else { 0.0 };
            if cur_main.abs() >= e.abs() {
                let pivot = if cur_main.abs() < tiny { tiny } else { cur_main };
                let factor = e / pivot;
                main[i] = pivot;
                sup1[i] = cur_sup;
                sup2[i] = 0.0;
                b[i + 1] -= factor * b[i];
                cur_main = next_main - factor * cur_sup;
                cur_sup = next_sup;
            } else {
                // swap rows i and i+1
                let factor = cur_main / e;
                main[i] = e;
                sup1[i] = next_main;
                sup2[i] = next_sup;
                b.swap(i, i + 1);
                let new_main = cur_sup - factor * next_main;
                let new_sup = -factor * next_sup;
                b[i + 1] -= factor * b[i];
                cur_main = new_main;
                cur_sup = new_sup;
            }
        }
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let mut s = b[i];
            if i + 1 < n {
                s -= sup1[i] * x[i + 1];
            }
            if i + 2 < n {
                s -= sup2[i] * x[i + 2];
            }
            x[i] = s / main[i];
        }
        x
    }

    fn eigenvector(&self, lambda: f64, h: f64) -> Vec<f64> {
        let n = self.len();
        let scale = lambda.abs().max(self.off.abs());
        let shift = lambda + 4.0 * f64::EPSILON * scale;
        // deterministic start with components along every mode
        let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * ((i as f64) * 0.7).sin()).collect();
        for _ in 0..3 {
            v = self.solve_shifted(shift, &v);
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.iter_mut().for_each(|x| *x /= norm);
        }
        let norm = (v.iter().map(|x| x * x).sum::<f64>() * h).sqrt();
        // positive near the left edge for a stable sign convention
        let sign = v.iter().find(|x| x.abs() > 1e-3 / h.sqrt()).map_or(1.0, |x| x.signum());
        v.iter_mut().for_each(|x| *x *= sign / norm);
        v
    }
}

/// One eigenpair on the interior nodes; `sum psi^2 h = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenstate {
    /// eV
    pub energy: f64,
    pub wavefunction: Vec<f64>,
}

impl Eigenstate {
    /// Sign changes between interior nodes, ignoring numerically zero tails.
    pub fn node_count(&self) -> usize {
        let peak = self.wavefunction.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let mut last = 0.0;
        let mut count = 0;
        for &x in &self.wavefunction {
            if x.abs() < 1e-6 * peak {
                continue;
            }
            if last != 0.0 && x.signum() != last {
                count += 1;
            }
            last = x.signum();
        }
        count
    }

    /// Largest of the two edge amplitudes relative to the peak.
    pub fn edge_amplitude(&self) -> f64 {
        let peak = self.wavefunction.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let first = self.wavefunction.first().map_or(0.0, |x| x.abs());
        let last = self.wavefunction.last().map_or(0.0, |x| x.abs());
        first.max(last) / peak
    }
}

/// Lowest eigenvalues and eigenvectors without the decay check.
pub fn eigensolve_unchecked(problem: &GridProblem, count: usize) -> Result<Vec<Eigenstate>> {
    let unknowns = problem.n_points - 2;
    if count == 0 || count > problem.n_points / 10 {
        return Err(Error::Grid(format!(
            "count = {count} must be in 1..={} for {} points",
            problem.n_points / 10,
            problem.n_points
        )));
    }
    let t = problem.matrix()?;
    debug_assert_eq!(t.len(), unknowns);
    let h = problem.step();
    let bounds = t.gershgorin();
    Ok((0..count)
        .map(|k| {
            let energy = t.eigenvalue(k, bounds);
            Eigenstate {
                energy,
                wavefunction: t.eigenvector(energy, h),
            }
        })
        .collect())
}

/// Lowest `count` eigenpairs. Fails with a boundary-leak error when an
/// eigenfunction has not decayed below [`DECAY_TOLERANCE`] at the box edge.
pub fn eigensolve(problem: &GridProblem, count: usize) -> Result<Vec<Eigenstate>> {
    let states = eigensolve_unchecked(problem, count)?;
    for (level, s) in states.iter().enumerate() {
        let amplitude = s.edge_amplitude();
        if !(amplitude < DECAY_TOLERANCE) {
            return Err(Error::BoundaryLeak { level, amplitude });
        }
    }
    Ok(states)
}

/// Richardson-extrapolated level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RefinedLevel {
    /// `(4 E_{h/2} - E_h)/3` (eV).
    pub energy: f64,
    /// `|E_h - E_{h/2}|/3` (eV).
    pub error_estimate: f64,
    pub coarse: f64,
    pub fine: f64,
    /// Whether the estimate meets the requested tolerance.
    pub converged: bool,
}

/// Solves at `h` and `h/2` and extrapolates the `h^2` error away.
/// `tolerance` (eV) sets each level's `converged` flag.
pub fn richardson_refine(problem: &GridProblem, count: usize, tolerance: Option<f64>) -> Result<Vec<RefinedLevel>> {
    let fine_problem = problem.refined();
    let (coarse, fine) = rayon::join(|| eigensolve(problem, count), || eigensolve(&fine_problem, count));
    let (coarse, fine) = (coarse?, fine?);
    Ok(coarse
        .iter()
        .zip(&fine)
        .map(|(c, f)| {
            let error_estimate = (c.energy - f.energy).abs() / 3.0;
            RefinedLevel {
                energy: (4.0 * f.energy - c.energy) / 3.0,
                error_estimate,
                coarse: c.energy,
                fine: f.energy,
                converged: tolerance.is_none_or(|tol| error_estimate <= tol),
            }
        })
        .collect())
}

/// `[r_e - 8/|gamma|, r_e + 20/|gamma|]`, optionally clipped to `r > 0`.
pub fn morse_box(r_e: f64, gamma: f64, radial: bool) -> (f64, f64) {
    let g = gamma.abs();
    let lo = r_e - 8.0 / g;
    let lo = if radial { lo.max(1e-6 * r_e.abs().max(1e-3)) } else { lo };
    (lo, r_e + 20.0 / g)
}

/// Box whose edges lie `decay` WKB attenuation units past the classical
/// turning points of `energy`, searched outward from `center` within `limits`.
pub fn decay_box(
    potential: &dyn Fn(f64) -> f64,
    energy: f64,
    mass: f64,
    hbar_c: f64,
    center: f64,
    limits: (f64, f64),
    decay: f64,
) -> Result<(f64, f64)> {
    if !(limits.0 < center && center < limits.1) {
        return Err(Error::Grid(format!("center {center} is outside the limits {limits:?}")));
    }
    let walk = |direction: f64, limit: f64| -> f64 {
        let span = (limit - center).abs();
        let steps = 200_000;
        let dx = span / steps as f64;
        let mut attenuation = 0.0;
        let mut x = center;
        for _ in 0..steps {
            let next = x + direction * dx;
            let v = potential(next);
            if !v.is_finite() {
                return x;
            }
            if v > energy {
                attenuation += (2.0 * mass * (v - energy)).sqrt() / hbar_c * dx;
                if attenuation >= decay {
                    return next;
                }
            }
            x = next;
        }
        limit
    };
    Ok((walk(-1.0, limits.0), walk(1.0, limits.1)))
}
