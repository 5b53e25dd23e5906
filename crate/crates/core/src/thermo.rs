//! Canonical-ensemble statistics of finite S-wave spectra and Schottky-peak detection.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pekeris::{pekeris_levels, Equation, SpinBranch};
use crate::units::CELSIUS_OFFSET;

/// Boltzmann factors below `e^-700` are set to zero so the sums never touch subnormals.
const WEIGHT_CUTOFF: f64 = 700.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// Weights `exp(-gamma' E~)` with `gamma' = hbar w/k_B T`.
    NonRelativistic,
    /// Weights `exp(-gamma' sqrt(1 + 2 (hbar w/mc^2) E~))` with `gamma' = mc^2/k_B T`.
    Relativistic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumLevel {
    pub n: u32,
    pub branch: SpinBranch,
    /// Reduced energy in units of `hbar w`.
    pub reduced: f64,
}

/// Levels entering the partition sums, with their statistical energies split
/// into a ground value and non-negative offsets.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTable {
    /// Sorted by statistical energy; ties keep branch order.
    pub levels: Vec<SpectrumLevel>,
    pub regime: Regime,
    /// `hbar w / m c^2`; unused in the nonrelativistic regime.
    pub gamma_ratio: f64,
    /// Levels dropped by positivity filtering.
    pub filtered: usize,
    ground: f64,
    offsets: Vec<f64>,
}

impl SpectrumTable {
    /// Table over arbitrary levels. Levels whose statistical energy is not
    /// positive (nonrelativistic) or not real (relativistic) are dropped.
    pub fn from_levels(levels: Vec<SpectrumLevel>, regime: Regime, gamma_ratio: f64) -> Result<Self> {
        if regime == Regime::Relativistic && !(gamma_ratio > 0.0 && gamma_ratio.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "relativistic regime needs hbar w/mc^2 > 0, got {gamma_ratio}"
            )));
        }
        if let Some(bad) = levels.iter().find(|l| !l.reduced.is_finite()) {
            return Err(Error::Domain(format!("level {} has non-finite energy", bad.n)));
        }
        let total = levels.len();
        let mut kept: Vec<SpectrumLevel> = levels
            .into_iter()
            .filter(|l| match regime {
                Regime::NonRelativistic => l.reduced > 0.0,
                Regime::Relativistic => 1.0 + 2.0 * gamma_ratio * l.reduced > 0.0,
            })
            .collect();
        let filtered = total - kept.len();
        if kept.is_empty() {
            return Err(Error::EmptySpectrum { filtered });
        }
        kept.sort_by(|a, b| a.reduced.total_cmp(&b.reduced));
        let lowest = kept[0].reduced;
        let (ground, offsets) = match regime {
            Regime::NonRelativistic => (lowest, kept.iter().map(|l| l.reduced - lowest).collect()),
            Regime::Relativistic => {
                let root = |e: f64| (1.0 + 2.0 * gamma_ratio * e).sqrt();
                let base = root(lowest);
                // difference of square roots without cancellation
                let offsets = kept
                    .iter()
                    .map(|l| 2.0 * gamma_ratio * (l.reduced - lowest) / (root(l.reduced) + base))
                    .collect();
                (base, offsets)
            }
        };
        Ok(Self {
            levels: kept,
            regime,
            gamma_ratio,
            filtered,
            ground,
            offsets,
        })
    }

    /// Lowest statistical energy (units of `hbar w` or `mc^2`).
    pub fn ground(&self) -> f64 {
        self.ground
    }

    /// Statistical energies relative to the ground, ascending.
    pub fn offsets(&self) -> &[f64] {
        &self.offsets
    }

    /// Statistical energies in units of the regime's energy scale.
    pub fn energies(&self) -> Vec<f64> {
        self.offsets.iter().map(|d| self.ground + d).collect()
    }

    /// Energy unit of the statistical energies in eV, given `hbar w`.
    pub fn energy_scale(&self, hbar_omega: f64) -> f64 {
        match self.regime {
            Regime::NonRelativistic => hbar_omega,
            Regime::Relativistic => hbar_omega / self.gamma_ratio,
        }
    }

    /// Count of levels on a branch.
    pub fn branch_count(&self, branch: SpinBranch) -> usize {
        self.levels.iter().filter(|l| l.branch == branch).count()
    }
}

/// Recast levels of one equation. Dirac takes the plus and minus branches;
/// Klein-Gordon carries `f = 0` on both, giving the plus branch twice.
pub fn build_spectrum(
    alpha: f64,
    delta: f64,
    equation: Equation,
    regime: Regime,
    gamma_ratio: f64,
) -> Result<SpectrumTable> {
    let branch = |b: SpinBranch| -> Result<Vec<SpectrumLevel>> {
        Ok(pekeris_levels(alpha, delta, b)?
            .into_iter()
            .enumerate()
            .map(|(n, reduced)| SpectrumLevel {
                n: n as u32,
                branch: b,
                reduced,
            })
            .collect())
    };
    let mut levels = branch(SpinBranch::Plus)?;
    match equation {
        Equation::Dirac => levels.extend(branch(SpinBranch::Minus)?),
        Equation::KleinGordon => levels.extend(levels.clone()),
    }
    if levels.is_empty() {
        return Err(Error::EmptySpectrum { filtered: 0 });
    }
    SpectrumTable::from_levels(levels, regime, gamma_ratio)
}

/// Thermodynamic state at one inverse temperature, in units of the regime's
/// energy scale and `k_B`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThermoPoint {
    pub gamma_prime: f64,
    pub log_partition: f64,
    pub internal_energy: f64,
    pub free_energy: f64,
    pub entropy: f64,
    pub heat_capacity: f64,
}

fn check_gamma_prime(gamma_prime: f64) -> Result<()> {
    if gamma_prime > 0.0 && gamma_prime.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "inverse temperature must be > 0, got {gamma_prime}"
        )))
    }
}

/// Exact moment sums at `gamma_prime`.
pub fn thermo_point(spectrum: &SpectrumTable, gamma_prime: f64) -> Result<ThermoPoint> {
    check_gamma_prime(gamma_prime)?;
    let mut z = 0.0;
    let mut first = 0.0;
    for &d in &spectrum.offsets {
        let x = gamma_prime * d;
        if x > WEIGHT_CUTOFF {
            break;
        }
        let w = (-x).exp();
        z += w;
        first += w * d;
    }
    let mean = first / z;
    let mut var = 0.0;
    for &d in &spectrum.offsets {
        let x = gamma_prime * d;
        if x > WEIGHT_CUTOFF {
            break;
        }
        let dev = d - mean;
        var += (-x).exp() * dev * dev;
    }
    var /= z;
    let ln_zs = z.ln();
    let e0 = spectrum.ground;
    Ok(ThermoPoint {
        gamma_prime,
        log_partition: ln_zs - gamma_prime * e0,
        internal_energy: e0 + mean,
        free_energy: e0 - ln_zs / gamma_prime,
        entropy: gamma_prime * mean + ln_zs,
        heat_capacity: gamma_prime * gamma_prime * var,
    })
}

/// `ln Z` at `gamma_prime`, shifted by the ground energy to stay finite.
pub fn log_partition(spectrum: &SpectrumTable, gamma_prime: f64) -> Result<f64> {
    Ok(thermo_point(spectrum, gamma_prime)?.log_partition)
}

/// `Z = sum exp(-gamma' E)`; may overflow to infinity for deep negative grounds.
pub fn partition(spectrum: &SpectrumTable, gamma_prime: f64) -> Result<f64> {
    log_partition(spectrum, gamma_prime).map(f64::exp)
}

/// Logarithmically spaced temperatures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TemperatureGrid {
    pub t_min: f64,
    pub t_max: f64,
    pub points_per_decade: usize,
}

impl Default for TemperatureGrid {
    fn default() -> Self {
        Self {
            t_min: 1.0,
            t_max: 1e8,
            points_per_decade: 2000,
        }
    }
}

impl TemperatureGrid {
    pub fn logarithmic(t_min: f64, t_max: f64, points_per_decade: usize) -> Result<Self> {
        if !(t_min > 0.0 && t_max > t_min && t_max.is_finite()) {
            return Err(Error::Grid(format!("need 0 < tmin < tmax, got [{t_min}, {t_max}]")));
        }
        if points_per_decade == 0 {
            return Err(Error::Grid("points per decade must be >= 1".into()));
        }
        Ok(Self {
            t_min,
            t_max,
            points_per_decade,
        })
    }

    /// Grid nodes in K, ascending, both ends included.
    pub fn temperatures(&self) -> Vec<f64> {
        let decades = (self.t_max / self.t_min).log10();
        let steps = (decades * self.points_per_decade as f64).round().max(1.0) as usize;
        let ln_min = self.t_min.ln();
        let ln_step = (self.t_max / self.t_min).ln() / steps as f64;
        (0..=steps)
            .map(|i| {
                if i == 0 {
                    self.t_min
                } else if i == steps {
                    self.t_max
                } else {
                    (ln_min + ln_step * i as f64).exp()
                }
            })
            .collect()
    }
}

/// Aligned thermodynamic curves. Energies are in units of `energy_scale`,
/// entropy and heat capacity in `k_B`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThermoSweep {
    pub regime: Regime,
    /// eV
    pub energy_scale: f64,
    pub temperatures: Vec<f64>,
    pub control: Vec<f64>,
    pub internal_energy: Vec<f64>,
    pub free_energy: Vec<f64>,
    pub entropy: Vec<f64>,
    pub heat_capacity: Vec<f64>,
}

impl ThermoSweep {
    pub fn len(&self) -> usize {
        self.temperatures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.temperatures.is_empty()
    }
}

/// Evaluates the spectrum on every temperature (K). `hbar_omega` (eV) and
/// `k_b` (eV/K) fix the inverse-temperature parameter.
pub fn sweep(spectrum: &SpectrumTable, temperatures: &[f64], hbar_omega: f64, k_b: f64) -> Result<ThermoSweep> {
    if temperatures.is_empty() {
        return Err(Error::Grid("empty temperature grid".into()));
    }
    if let Some(w) = temperatures.windows(2).find(|w| !(w[1] > w[0])) {
        return Err(Error::Grid(format!("temperatures must ascend: {} then {}", w[0], w[1])));
    }
    if !(temperatures[0] > 0.0) {
        return Err(Error::Grid(format!(
            "temperatures must be > 0, got {}",
            temperatures[0]
        )));
    }
    let scale = spectrum.energy_scale(hbar_omega);
    let points: Vec<ThermoPoint> = temperatures
        .par_iter()
        .map(|&t| thermo_point(spectrum, scale / (k_b * t)))
        .collect::<Result<_>>()?;
    Ok(ThermoSweep {
        regime: spectrum.regime,
        energy_scale: scale,
        temperatures: temperatures.to_vec(),
        control: points.iter().map(|p| p.gamma_prime).collect(),
        internal_energy: points.iter().map(|p| p.internal_energy).collect(),
        free_energy: points.iter().map(|p| p.free_energy).collect(),
        entropy: points.iter().map(|p| p.entropy).collect(),
        heat_capacity: points.iter().map(|p| p.heat_capacity).collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SchottkyPeak {
    /// 1-based order along increasing temperature.
    pub index: usize,
    pub tc_kelvin: f64,
    pub tc_celsius: f64,
    /// k_B
    pub c_peak: f64,
    /// Grid index of the bracketed maximum.
    pub grid_index: usize,
}

/// Strict interior maxima of `C(T)`, each refined by a parabola through the
/// bracketing points in `ln T`.
pub fn schottky_peaks(sweep: &ThermoSweep) -> Vec<SchottkyPeak> {
    let c = &sweep.heat_capacity;
    let t = &sweep.temperatures;
    if c.len() < 3 {
        return Vec::new();
    }
    let mut peaks = Vec::new();
    for i in 1..c.len() - 1 {
        if !(c[i] > c[i - 1] && c[i] > c[i + 1]) {
            continue;
        }
        let (x0, x1, x2) = (t[i - 1].ln(), t[i].ln(), t[i + 1].ln());
        let (y0, y1, y2) = (c[i - 1], c[i], c[i + 1]);
        // vertex of the interpolating parabola
        let d01 = (y1 - y0) / (x1 - x0);
        let d12 = (y2 - y1) / (x2 - x1);
        let curv = (d12 - d01) / (x2 - x0);
        let (x_peak, c_peak) = if curv < 0.0 {
            let xv = 0.5 * (x0 + x1) - d01 / (2.0 * curv);
            let xv = xv.clamp(x0, x2);
            let yv = y1 + (xv - x1) * (d01 + curv * (xv - x0));
            (xv, yv.max(y1))
        } else {
            (x1, y1)
        };
        let tc = x_peak.exp();
        peaks.push(SchottkyPeak {
            index: peaks.len() + 1,
            tc_kelvin: tc,
            tc_celsius: tc - CELSIUS_OFFSET,
            c_peak,
            grid_index: i,
        });
    }
    peaks
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn two_level(gap: f64) -> SpectrumTable {
        let levels = [1e-3, 1e-3 + gap]
            .iter()
            .enumerate()
            .map(|(n, &e)| SpectrumLevel {
                n: n as u32,
                branch: SpinBranch::Plus,
                reduced: e,
            })
            .collect();
        SpectrumTable::from_levels(levels, Regime::NonRelativistic, 0.0).unwrap()
    }

    #[test]
    fn two_level_schottky_curve() {
        let s = two_level(1.0);
        for beta in [0.1, 0.7, 1.0, 2.4, 9.0] {
            let p = thermo_point(&s, beta).unwrap();
            let e = f64::exp(beta);
            assert_relative_eq!(
                p.heat_capacity,
                beta * beta * e / (1.0 + e).powi(2),
                max_relative = 1e-10
            );
        }
    }

    #[test]
    fn electron_counts() {
        let s = build_spectrum(1.0, 0.219444, Equation::Dirac, Regime::Relativistic, 124.0 / 511e3).unwrap();
        assert_eq!(s.branch_count(SpinBranch::Plus), 7);
        assert_eq!(s.branch_count(SpinBranch::Minus), 4);
        let nr = build_spectrum(1.0, 0.219444, Equation::Dirac, Regime::NonRelativistic, 0.0).unwrap();
        assert_eq!(nr.filtered, 1);
    }

    #[test]
    fn grid_endpoints() {
        let g = TemperatureGrid::logarithmic(10.0, 1e4, 10).unwrap().temperatures();
        assert_eq!(g.len(), 31);
        assert_eq!(g[0], 10.0);
        assert_eq!(*g.last().unwrap(), 1e4);
    }
}
