//! Closed-form spectra checked against the finite-difference oracle.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::molecules::builtin_molecule;
use crate::oracle::{decay_box, eigensolve_unchecked, richardson_refine, GridProblem, Potential, RefinedLevel};
use crate::pekeris::{
    effective_morse, homographic_centered, lennard_jones_1269, pekeris_map, MapOptions, SpinAngularChannel, SpinBranch,
    Truncation,
};
use crate::riccati::{confluent_levels, factorize, Factorizable, RiccatiSpec};
use crate::spectra::{
    kgmo_nmax, kgmo_operator_energy_1d, kgmo_operator_potential, qmo_energy, qmo_nmax, qmo_potential,
};
use crate::units::{OscillatorParams, PhysicalConstants};

/// Relative agreement required between closed form and oracle.
pub const LEVEL_TOLERANCE: f64 = 1e-6;
/// Levels compared per problem.
pub const LEVEL_COUNT: usize = 4;
/// Coarse grid; the Richardson step adds the halved grid.
pub const ORACLE_POINTS: usize = 4001;
/// WKB attenuation (e-folds) between turning points and box edges.
const BOX_DECAY: f64 = 32.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelComparison {
    pub n: usize,
    /// eV; absent when the problem has no closed form.
    pub closed_form: Option<f64>,
    pub oracle: RefinedLevel,
    /// Deviation relative to the height above the well bottom. Without a
    /// closed form it is the change of the extrapolated level when the
    /// grid is halved once more.
    pub relative_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub tolerance: f64,
    pub max_relative_error: f64,
    /// Bottom of the sampled potential (eV).
    pub well_bottom: f64,
    pub box_domain: (f64, f64),
    pub levels: Vec<LevelComparison>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

/// A 1D problem with optional closed-form levels.
#[derive(Clone)]
pub struct OracleCase {
    pub name: String,
    pub potential: Potential,
    pub mass: f64,
    pub hbar_c: f64,
    /// Interval searched for the well and the box edges.
    pub limits: (f64, f64),
    /// Closed-form levels; when empty the oracle's own convergence is checked.
    pub closed_form: Vec<f64>,
    /// Levels solved for when there is no closed form.
    pub count: usize,
}

fn locate_minimum(potential: &dyn Fn(f64) -> f64, limits: (f64, f64)) -> (f64, f64) {
    let samples = 20_000;
    let (lo, hi) = limits;
    let mut best = (0.5 * (lo + hi), f64::INFINITY);
    for i in 1..samples {
        let x = lo + (hi - lo) * i as f64 / samples as f64;
        let v = potential(x);
        if v.is_finite() && v < best.1 {
            best = (x, v);
        }
    }
    best
}

impl OracleCase {
    pub fn run(&self) -> CheckResult {
        self.try_run().unwrap_or_else(|e| CheckResult {
            name: self.name.clone(),
            passed: false,
            tolerance: LEVEL_TOLERANCE,
            max_relative_error: f64::NAN,
            well_bottom: f64::NAN,
            box_domain: (f64::NAN, f64::NAN),
            levels: Vec::new(),
            error: Some(e.to_string()),
        })
    }

    fn try_run(&self) -> Result<CheckResult> {
        let potential = |x: f64| (self.potential)(x);
        let (center, bottom) = locate_minimum(&potential, self.limits);
        if !bottom.is_finite() {
            return Err(Error::Grid(
                "potential has no finite minimum in the search interval".into(),
            ));
        }
        let count = if self.closed_form.is_empty() {
            self.count
        } else {
            self.closed_form.len()
        };
        let top = match self.closed_form.iter().copied().reduce(f64::max) {
            Some(top) => top,
            None => {
                // rough levels on the whole search interval size the box
                let wide = GridProblem::with_potential(
                    self.limits,
                    ORACLE_POINTS,
                    self.potential.clone(),
                    self.mass,
                    self.hbar_c,
                )?;
                let rough = eigensolve_unchecked(&wide, count)?;
                rough.last().map_or(bottom, |s| s.energy)
            }
        };
        let domain = decay_box(&potential, top, self.mass, self.hbar_c, center, self.limits, BOX_DECAY)?;
        let problem =
            GridProblem::with_potential(domain, ORACLE_POINTS, self.potential.clone(), self.mass, self.hbar_c)?;
        let refined = richardson_refine(&problem, count, None)?;
        // without a closed form, compare extrapolations from h and h/2
        let reference = if self.closed_form.is_empty() {
            richardson_refine(&problem.refined(), count, None)?
                .into_iter()
                .map(|l| Some(l.energy))
                .collect()
        } else {
            vec![None; count]
        };
        let mut levels = Vec::with_capacity(count);
        let mut worst: f64 = 0.0;
        for (n, oracle) in refined.into_iter().enumerate() {
            let closed = self.closed_form.get(n).copied();
            let height = (closed.unwrap_or(oracle.energy) - bottom).abs();
            let deviation = match (closed, reference[n]) {
                (Some(c), _) => (oracle.energy - c).abs(),
                (None, Some(finer)) => (oracle.energy - finer).abs(),
                (None, None) => oracle.error_estimate,
            };
            let relative_error = deviation / height;
            worst = worst.max(relative_error);
            levels.push(LevelComparison {
                n,
                closed_form: closed,
                oracle,
                relative_error,
            });
        }
        Ok(CheckResult {
            name: self.name.clone(),
            passed: worst <= LEVEL_TOLERANCE,
            tolerance: LEVEL_TOLERANCE,
            max_relative_error: worst,
            well_bottom: bottom,
            box_domain: domain,
            levels,
            error: None,
        })
    }
}

fn level_count(nmax: Option<u32>) -> Result<u32> {
    match nmax {
        Some(max) => Ok((max.saturating_add(1)).min(LEVEL_COUNT as u32)),
        None => Err(Error::EmptySpectrum { filtered: 0 }),
    }
}

/// Search interval around the origin of a 1D Morse problem.
fn morse_limits(params: &OscillatorParams) -> (f64, f64) {
    let g = params.gamma.abs().max(1e-12);
    (-40.0 / g, 40.0 / g)
}

/// Quantum Morse oscillator in the shifted coordinate.
pub fn qmo_case(name: &str, params: OscillatorParams) -> Result<OracleCase> {
    let count = level_count(qmo_nmax(&params))?;
    Ok(OracleCase {
        name: name.into(),
        potential: Arc::new(move |eta| qmo_potential(eta, &params)),
        mass: params.mass,
        hbar_c: params.hbar_c,
        limits: morse_limits(&params),
        closed_form: (0..count).map(|n| qmo_energy(n, &params)).collect::<Result<_>>()?,
        count: count as usize,
    })
}

/// Product operator of the 1D Klein-Gordon Morse oscillator.
pub fn kgmo_case(name: &str, params: OscillatorParams) -> Result<OracleCase> {
    let count = level_count(kgmo_nmax(&params))?;
    Ok(OracleCase {
        name: name.into(),
        potential: Arc::new(move |eta| kgmo_operator_potential(eta, &params)),
        mass: params.mass,
        hbar_c: params.hbar_c,
        limits: morse_limits(&params),
        closed_form: (0..count)
            .map(|n| kgmo_operator_energy_1d(n, &params))
            .collect::<Result<_>>()?,
        count: count as usize,
    })
}

/// Effective Morse well of an S-wave channel on `r > 0`.
pub fn effective_morse_case(name: &str, params: OscillatorParams, channel: SpinAngularChannel) -> Result<OracleCase> {
    let em = effective_morse(&params, &channel, Truncation::Full)?;
    let count = level_count(em.nmax())?;
    let g = params.gamma.abs();
    Ok(OracleCase {
        name: name.into(),
        potential: Arc::new(move |r| em.potential(r)),
        mass: params.mass,
        hbar_c: params.hbar_c,
        limits: (1e-6 * params.r_e, em.r_eff + 40.0 / g),
        closed_form: (0..count).map(|n| em.energy(n)).collect::<Result<_>>()?,
        count: count as usize,
    })
}

/// Oscillator whose Morse depth `m w^2/2gamma^2` equals `depth`.
fn params_with_depth(mass: f64, depth: f64, gamma: f64, r_e: f64, hbar_c: f64) -> Result<OscillatorParams> {
    let hbar_omega = gamma.abs() * hbar_c * (2.0 * depth / mass).sqrt();
    OscillatorParams::with_hbar_c(mass, hbar_omega, gamma, r_e, hbar_c)
}

/// Mapped homographic well `U = (1/gamma)(a gamma r - a)/(c gamma r + d)`,
/// exact through its Riccati closure: a Coulomb plus centrifugal problem in
/// `rho = r + d/(c gamma)`.
pub fn homographic_case(
    name: &str,
    mass: f64,
    depth: f64,
    r_e: f64,
    (a, c, d): (f64, f64, f64),
    hbar_c: f64,
) -> Result<OracleCase> {
    let coupling = homographic_centered(a, c, d, r_e)?;
    let gamma = coupling.gamma;
    let params = params_with_depth(mass, depth, gamma, r_e, hbar_c)?;
    let mapped = pekeris_map(&coupling, &params, &SpinAngularChannel::kg(0), MapOptions::default())?;
    let b = -a;
    let det = a * d - b * c;
    // U' = (gamma c U - a)^2 / (ad - bc)
    let spec = RiccatiSpec::new(
        gamma * gamma * c * c / det,
        -2.0 * a * gamma * c / det,
        a * a / det,
        0.0,
    );
    let form = factorize(Factorizable::Mapped(&mapped), &spec)?;
    let u_inf = a / (c * gamma);
    let q = (b * c - a * d) / (c * c * gamma * gamma);
    let closed = confluent_levels(&form, u_inf, q, mass, hbar_c, LEVEL_COUNT)?;
    let pole = -d / (c * gamma);
    Ok(OracleCase {
        name: name.into(),
        potential: Arc::new(move |r| mapped.effective_potential(r)),
        mass,
        hbar_c,
        limits: (pole + 1e-6 * r_e, pole + 200.0 * r_e),
        closed_form: closed,
        count: LEVEL_COUNT,
    })
}

/// Mapped 12-6-9 Lennard-Jones well, confined inside the barrier at
/// `2^{1/6} r_e`. There is no closed form; the check is the oracle's
/// own convergence.
pub fn lennard_jones_case(name: &str, mass: f64, depth: f64, r_e: f64, hbar_c: f64) -> Result<OracleCase> {
    let coupling = lennard_jones_1269(r_e)?;
    let params = params_with_depth(mass, depth, coupling.gamma, r_e, hbar_c)?;
    let mapped = pekeris_map(&coupling, &params, &SpinAngularChannel::kg(0), MapOptions::default())?;
    Ok(OracleCase {
        name: name.into(),
        potential: Arc::new(move |r| mapped.effective_potential(r)),
        mass,
        hbar_c,
        limits: (0.3 * r_e, 2f64.powf(1.0 / 6.0) * r_e),
        closed_form: Vec::new(),
        count: LEVEL_COUNT,
    })
}

/// Every closed-form spectrum with an oracle counterpart.
pub fn standard_cases(constants: &PhysicalConstants) -> Result<Vec<OracleCase>> {
    let h2 = builtin_molecule("H2", constants)?;
    let params = h2.oscillator(constants.hbar_c)?;
    let unit = OscillatorParams::with_hbar_c(1.0, 1.0, 1.0, 1.0, 1.0)?;
    let heavy = constants.amu_to_energy(100.0)?;
    Ok(vec![
        qmo_case("qmo_unit", unit)?,
        qmo_case("qmo_h2", params)?,
        kgmo_case("kgmo_operator_h2", params)?,
        effective_morse_case("effective_morse_h2_kg", params, SpinAngularChannel::kg(0))?,
        effective_morse_case(
            "effective_morse_h2_dirac_plus",
            params,
            SpinAngularChannel::dirac(0, SpinBranch::Plus),
        )?,
        effective_morse_case(
            "effective_morse_h2_dirac_minus",
            params,
            SpinAngularChannel::dirac(0, SpinBranch::Minus),
        )?,
        homographic_case(
            "homographic_mapped",
            h2.mass_energy,
            h2.de,
            h2.re,
            (1.0, 0.5, 0.5),
            constants.hbar_c,
        )?,
        lennard_jones_case("lj1269_mapped", heavy, 100.0, 1.0, constants.hbar_c)?,
    ])
}

/// Runs every standard case in parallel.
pub fn run_suite(constants: &PhysicalConstants) -> Result<ValidationReport> {
    let cases = standard_cases(constants)?;
    let checks: Vec<CheckResult> = cases.par_iter().map(OracleCase::run).collect();
    Ok(ValidationReport {
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}
