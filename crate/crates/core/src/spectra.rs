//! Closed-form one-dimensional spectra: the quantum Morse oscillator and its
//! eigenfunctions, the Klein-Gordon and Dirac oscillators, the 1D
//! Klein-Gordon/Dirac Morse oscillators and the fitted molecular Morse ladder.

use crate::error::{Error, Result};
use crate::laguerre::{laguerre, laguerre_derivative};
use crate::molecules::MoleculeRecord;
use crate::numerics::{bisect, linspace, simpson};
use crate::units::OscillatorParams;

/// Below this value of `|gamma*x|` the coordinate maps use their series.
pub const SERIES_THRESHOLD: f64 = 1e-8;

/// `eta = ln(1 + gamma x)/gamma`.
pub fn eta_of_x(x: f64, gamma: f64) -> Result<f64> {
    let gx = gamma * x;
    if !(1.0 + gx > 0.0) {
        return Err(Error::Domain(format!(
            "1 + gamma*x = {} <= 0: the deformed derivative is singular there",
            1.0 + gx
        )));
    }
    if gx.abs() < SERIES_THRESHOLD {
        Ok(x * (1.0 - gx / 2.0 + gx * gx / 3.0))
    } else {
        Ok(gx.ln_1p() / gamma)
    }
}

/// Inverse of [`eta_of_x`]: `x = (e^{gamma eta} - 1)/gamma`.
pub fn x_of_eta(eta: f64, gamma: f64) -> f64 {
    let ge = gamma * eta;
    if ge.abs() < SERIES_THRESHOLD {
        eta * (1.0 + ge / 2.0 + ge * ge / 6.0)
    } else {
        ge.exp_m1() / gamma
    }
}

/// Which closed form produced a level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MorseBranch {
    Plain,
    KgMorse,
    DiracMorse,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MorseLevel {
    pub n: u32,
    /// eV
    pub energy: f64,
    pub branch: MorseBranch,
}

/// `gamma^2 hbar / (2 m omega_q)` for a quantum `hbar_omega_q`.
fn anharmonicity(params: &OscillatorParams, hbar_omega_q: f64) -> f64 {
    let g = params.gamma;
    g * g * params.hbar_c * params.hbar_c / (2.0 * params.mass * hbar_omega_q)
}

/// Largest `n` with `2n <= 2 m omega_q/(gamma^2 hbar) - 1`; `None` if no level fits.
/// With `gamma = 0` there is no bound and `Some(u32::MAX)` is returned.
fn ladder_nmax(params: &OscillatorParams, hbar_omega_q: f64) -> Option<u32> {
    let a = anharmonicity(params, hbar_omega_q);
    if a == 0.0 {
        return Some(u32::MAX);
    }
    let top = 1.0 / (2.0 * a) - 0.5;
    if top < 0.0 {
        None
    } else {
        Some(top.floor().min(u32::MAX as f64) as u32)
    }
}

fn ladder_energy(n: u32, params: &OscillatorParams, hbar_omega_q: f64) -> Result<f64> {
    match ladder_nmax(params, hbar_omega_q) {
        Some(max) if n <= max => {
            let x = n as f64 + 0.5;
            Ok(hbar_omega_q * x * (1.0 - anharmonicity(params, hbar_omega_q) * x))
        }
        max => Err(Error::LevelOutOfRange { level: n, max }),
    }
}

/// Highest bound level of the quantum Morse oscillator.
pub fn qmo_nmax(params: &OscillatorParams) -> Option<u32> {
    ladder_nmax(params, params.hbar_omega)
}

/// `E_n = hbar omega (n+1/2)[1 - (gamma^2 hbar/2 m omega)(n+1/2)]`.
pub fn qmo_energy(n: u32, params: &OscillatorParams) -> Result<f64> {
    ladder_energy(n, params, params.hbar_omega)
}

/// Every bound level of the quantum Morse oscillator.
pub fn qmo_levels(params: &OscillatorParams) -> Result<Vec<MorseLevel>> {
    let max = qmo_nmax(params).ok_or(Error::EmptySpectrum { filtered: 0 })?;
    if max == u32::MAX {
        return Err(Error::Domain("gamma = 0 gives an unbounded harmonic ladder".into()));
    }
    (0..=max)
        .map(|n| {
            Ok(MorseLevel {
                n,
                energy: qmo_energy(n, params)?,
                branch: MorseBranch::Plain,
            })
        })
        .collect()
}

/// Morse potential `D (e^{gamma eta} - 1)^2` of the oscillator.
pub fn qmo_potential(eta: f64, params: &OscillatorParams) -> f64 {
    if params.gamma == 0.0 {
        let k = params.m_omega_over_hbar() * params.hbar_omega;
        return 0.5 * k * eta * eta;
    }
    let w = (params.gamma * eta).exp_m1();
    params.well_depth() * w * w
}

/// Eigenfunction `A_n z^s e^{-z/2} L_n^{2s}(z)` with
/// `z = 2 (m omega/hbar) e^{gamma eta}/gamma^2`.
#[derive(Debug, Clone)]
pub struct MorseWavefunction {
    pub n: u32,
    pub s: f64,
    /// `2 (m omega/hbar)/gamma^2`, so that `z = z_scale * e^{gamma eta}`.
    pub z_scale: f64,
    pub gamma: f64,
    /// Natural log of the normalization constant `A_n`.
    pub log_norm: f64,
    window: (f64, f64),
}

const WAVEFUNCTION_NODES: usize = 8001;
// drop in log-density that delimits the integration window
const WINDOW_DECADES: f64 = 80.0;

impl MorseWavefunction {
    pub fn z_of_eta(&self, eta: f64) -> f64 {
        self.z_scale * (self.gamma * eta).exp()
    }

    fn eta_of_z(&self, z: f64) -> f64 {
        (z / self.z_scale).ln() / self.gamma
    }

    /// `Phi_n(eta)`.
    pub fn value(&self, eta: f64) -> f64 {
        let z = self.z_of_eta(eta);
        let envelope = (self.log_norm + self.s * z.ln() - 0.5 * z).exp();
        envelope * laguerre(self.n, 2.0 * self.s, z)
    }

    /// `dPhi_n/deta = gamma A z^s e^{-z/2} [(s - z/2) L + z L']`.
    pub fn derivative(&self, eta: f64) -> f64 {
        let z = self.z_of_eta(eta);
        let a = 2.0 * self.s;
        let envelope = (self.log_norm + self.s * z.ln() - 0.5 * z).exp();
        let l = laguerre(self.n, a, z);
        let dl = laguerre_derivative(self.n, a, z);
        self.gamma * envelope * ((self.s - 0.5 * z) * l + z * dl)
    }

    /// Interval outside which `|Phi|^2` is below `e^-80` of its peak envelope.
    pub fn window(&self) -> (f64, f64) {
        self.window
    }

    /// Uniform quadrature grid covering the window.
    pub fn grid(&self, nodes: usize) -> Vec<f64> {
        linspace(self.window.0, self.window.1, nodes)
    }
}

/// Builds the normalized eigenfunction `Phi_n`.
pub fn qmo_wavefunction(n: u32, params: &OscillatorParams) -> Result<MorseWavefunction> {
    qmo_energy(n, params)?;
    let g = params.gamma;
    if g == 0.0 {
        return Err(Error::Domain("the Morse eigenfunctions need gamma != 0".into()));
    }
    let kappa = params.m_omega_over_hbar();
    let s = kappa / (g * g) - n as f64 - 0.5;
    if !(s > 0.0) {
        return Err(Error::Domain(format!("exponent s = {s} must be > 0")));
    }
    let z_scale = 2.0 * kappa / (g * g);

    // envelope 2s ln z - z peaks at z = 2s; the polynomial adds at most 2n ln z on the far side
    let envelope = |z: f64, power: f64| power * z.ln() - z;
    let lo_peak = 2.0 * s;
    let lo_target = envelope(lo_peak, 2.0 * s) - WINDOW_DECADES;
    let ln_z_lo = bisect(
        |lz| envelope(lz.exp(), 2.0 * s) - lo_target,
        lo_peak.ln() - 1.0 - WINDOW_DECADES / (2.0 * s),
        lo_peak.ln(),
        1e-12,
    )?;
    let hi_power = 2.0 * s + 2.0 * n as f64;
    let hi_target = envelope(hi_power, hi_power) - WINDOW_DECADES;
    let ln_z_hi = bisect(
        |lz| envelope(lz.exp(), hi_power) - hi_target,
        hi_power.ln(),
        (hi_power + 4.0 * WINDOW_DECADES).ln() + 1.0,
        1e-12,
    )?;

    let mut wf = MorseWavefunction {
        n,
        s,
        z_scale,
        gamma: g,
        log_norm: 0.0,
        window: (0.0, 0.0),
    };
    let (a, b) = (wf.eta_of_z(ln_z_lo.exp()), wf.eta_of_z(ln_z_hi.exp()));
    wf.window = (a.min(b), a.max(b));

    // scale the unnormalized function near its envelope peak to stay in range
    wf.log_norm = -(s * lo_peak.ln() - 0.5 * lo_peak);
    let grid = wf.grid(WAVEFUNCTION_NODES);
    let h = grid[1] - grid[0];
    let density: Vec<f64> = grid.iter().map(|&e| wf.value(e).powi(2)).collect();
    let norm2 = simpson(&density, h);
    if !(norm2.is_finite() && norm2 > 0.0) {
        return Err(Error::Domain(format!("wavefunction norm is {norm2}")));
    }
    wf.log_norm -= 0.5 * norm2.ln();
    Ok(wf)
}

/// Expectation of the Morse Hamiltonian, `hbar^2/2m int Phi'^2 + int V Phi^2`.
pub fn rayleigh_quotient(wf: &MorseWavefunction, params: &OscillatorParams, nodes: usize) -> f64 {
    let grid = wf.grid(nodes);
    let h = grid[1] - grid[0];
    let kin: Vec<f64> = grid.iter().map(|&e| wf.derivative(e).powi(2)).collect();
    let pot: Vec<f64> = grid
        .iter()
        .map(|&e| qmo_potential(e, params) * wf.value(e).powi(2))
        .collect();
    let norm: Vec<f64> = grid.iter().map(|&e| wf.value(e).powi(2)).collect();
    (params.kinetic_prefactor() * simpson(&kin, h) + simpson(&pot, h)) / simpson(&norm, h)
}

/// Reduced Klein-Gordon oscillator energy `N hbar omega`.
pub fn kg_oscillator_energy(n: u32, hbar_omega: f64) -> f64 {
    n as f64 * hbar_omega
}

/// Full energy `E = mc^2 sqrt(1 + 2 reduced/mc^2)` of a reduced energy.
pub fn full_energy(reduced: f64, mc2: f64) -> Result<f64> {
    let arg = 1.0 + 2.0 * reduced / mc2;
    if arg < 0.0 {
        return Err(Error::Domain(format!("E^2 = {} (mc^2)^2 is negative", arg)));
    }
    Ok(mc2 * arg.sqrt())
}

/// Dirac oscillator energy for `(N, l, j = two_j/2)`:
/// `E^2 - m^2c^4 = hbar omega [2(N+1-j) -/+ 1] mc^2` with the upper sign for `l = j - 1/2`.
pub fn dirac_oscillator_energy(n: u32, l: u32, two_j: u32, hbar_omega: f64, mc2: f64) -> Result<f64> {
    if two_j.is_multiple_of(2) {
        return Err(Error::InconsistentChannel { l, two_j });
    }
    let sign = if 2 * l + 1 == two_j {
        -1.0
    } else if 2 * l == two_j + 1 {
        1.0
    } else {
        return Err(Error::InconsistentChannel { l, two_j });
    };
    let j = two_j as f64 / 2.0;
    let quanta = 2.0 * (n as f64 + 1.0 - j) + sign;
    full_energy(0.5 * hbar_omega * quanta, mc2)
}

/// Level of the 1D Klein-Gordon (or Dirac) Morse oscillator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KgmoLevel {
    /// Reduced energy (eV).
    pub energy: f64,
    /// Modified quantum `hbar omega~ = hbar omega (1 + gamma^2 hbar/2 m omega)` (eV).
    pub hbar_omega_tilde: f64,
    /// Origin shift `ln(omega~/omega)/gamma` (Å).
    pub eta0: f64,
}

/// `hbar omega~` for the given oscillator.
pub fn modified_quantum(params: &OscillatorParams) -> f64 {
    params.hbar_omega * (1.0 + anharmonicity(params, params.hbar_omega))
}

fn origin_shift(params: &OscillatorParams) -> f64 {
    let g = params.gamma;
    if g == 0.0 {
        return 0.0;
    }
    anharmonicity(params, params.hbar_omega).ln_1p() / g
}

/// Morse ladder with the modified quantum, `hbar w~ (N+1/2)[1 - (gamma^2 hbar/2 m w~)(N+1/2)]`.
pub fn kgmo_ladder(n: u32, params: &OscillatorParams) -> Result<f64> {
    ladder_energy(n, params, modified_quantum(params))
}

/// Highest level allowed by the modified ladder.
pub fn kgmo_nmax(params: &OscillatorParams) -> Option<u32> {
    ladder_nmax(params, modified_quantum(params))
}

/// KGMO spectrum as printed: ladder plus `hbar omega~/2`.
pub fn kgmo_energy_1d(n: u32, params: &OscillatorParams) -> Result<KgmoLevel> {
    let w = modified_quantum(params);
    Ok(KgmoLevel {
        energy: kgmo_ladder(n, params)? + 0.5 * w,
        hbar_omega_tilde: w,
        eta0: origin_shift(params),
    })
}

/// The 1D Dirac Morse oscillator coincides with the Klein-Gordon one.
pub fn dmo_energy_1d(n: u32, params: &OscillatorParams) -> Result<KgmoLevel> {
    kgmo_energy_1d(n, params)
}

/// Exact eigenvalues of the product operator
/// `(p + i m omega U)(p - i m omega U)/2m` with `U = (e^{gamma eta}-1)/gamma`,
/// i.e. `p^2/2m + D(e^{gamma eta}-1)^2 - (hbar omega/2) e^{gamma eta}`:
/// the ladder minus `(hbar omega + hbar omega~)/4`.
pub fn kgmo_operator_energy_1d(n: u32, params: &OscillatorParams) -> Result<f64> {
    let w = modified_quantum(params);
    Ok(kgmo_ladder(n, params)? - 0.25 * (params.hbar_omega + w))
}

/// Potential of the product operator above.
pub fn kgmo_operator_potential(eta: f64, params: &OscillatorParams) -> f64 {
    qmo_potential(eta, params) - 0.5 * params.hbar_omega * (params.gamma * eta).exp()
}

/// Binding energy `(alpha^2 E0/2)(Lambda - 1/2 - N)^2` of a fitted molecular level.
pub fn morse_lambda(n: u32, mol: &MoleculeRecord) -> Result<f64> {
    let margin = mol.lambda() - 0.5 - n as f64;
    if !(margin > 0.0) {
        return Err(Error::UnboundLevel { level: n, margin });
    }
    Ok(0.5 * mol.alpha * mol.alpha * mol.e0 * margin * margin)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit_params(gamma: f64) -> OscillatorParams {
        OscillatorParams::with_hbar_c(1.0, 1.0, gamma, 1.0, 1.0).unwrap()
    }

    #[test]
    fn coordinate_map_limits() {
        assert_eq!(eta_of_x(0.3, 0.0).unwrap(), 0.3);
        let g = 0.7;
        assert_relative_eq!(
            eta_of_x((1f64.exp() - 1.0) / g, g).unwrap(),
            1.0 / g,
            max_relative = 1e-15
        );
        assert!(matches!(eta_of_x(-2.0, 0.5), Err(Error::Domain(_))));
    }

    #[test]
    fn unit_morse_has_single_level() {
        let p = unit_params(1.0);
        assert_eq!(qmo_energy(0, &p).unwrap(), 0.375);
        assert!(matches!(
            qmo_energy(1, &p),
            Err(Error::LevelOutOfRange { level: 1, max: Some(0) })
        ));
    }

    #[test]
    fn harmonic_limit() {
        let p = unit_params(0.0);
        assert_eq!(qmo_energy(0, &p).unwrap(), 0.5);
        assert_eq!(qmo_energy(7, &p).unwrap(), 7.5);
        let w = kgmo_energy_1d(3, &p).unwrap();
        assert_eq!(w.energy, 4.0);
        assert_eq!(w.eta0, 0.0);
    }

    #[test]
    fn modified_frequency() {
        let p = unit_params(0.1);
        assert_relative_eq!(
            kgmo_energy_1d(0, &p).unwrap().hbar_omega_tilde,
            1.005,
            max_relative = 1e-15
        );
    }

    #[test]
    fn dirac_channels() {
        let (w, mc2) = (0.3, 10.0);
        // same branch, (N+1, j+1) and (N, j)
        let a = dirac_oscillator_energy(3, 1, 3, w, mc2).unwrap();
        let b = dirac_oscillator_energy(4, 2, 5, w, mc2).unwrap();
        assert_relative_eq!(a, b, max_relative = 1e-15);
        assert!(matches!(
            dirac_oscillator_energy(0, 2, 1, w, mc2),
            Err(Error::InconsistentChannel { .. })
        ));
        assert!(dirac_oscillator_energy(0, 0, 2, w, mc2).is_err());
        // non-relativistic limit: eps = hbar omega (N + 1 - j -/+ 1/2)
        let big = 1e9;
        let e = dirac_oscillator_energy(2, 1, 1, w, big).unwrap();
        assert_relative_eq!(e - big, w * (2.0 + 1.0 - 0.5 + 0.5), max_relative = 1e-6);
    }

    #[test]
    fn h2_ground_binding() {
        let h2 = crate::molecules::h2();
        assert!((morse_lambda(0, &h2).unwrap() - 4.476013).abs() < 1e-3);
        let top = (h2.lambda() - 0.5).ceil() as u32;
        assert!(matches!(morse_lambda(top, &h2), Err(Error::UnboundLevel { .. })));
    }

    #[test]
    fn ground_state_is_nodeless_and_normalized() {
        let h2 = crate::molecules::h2();
        let p = h2.oscillator(crate::units::CODATA_2018.hbar_c).unwrap();
        let wf = qmo_wavefunction(0, &p).unwrap();
        let grid = wf.grid(4001);
        assert!(grid.iter().all(|&e| wf.value(e) >= 0.0));
        let d: Vec<f64> = grid.iter().map(|&e| wf.value(e).powi(2)).collect();
        assert_relative_eq!(simpson(&d, grid[1] - grid[0]), 1.0, max_relative = 1e-8);
    }
}
