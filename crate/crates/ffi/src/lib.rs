//! C ABI over the `pekeris` crate.
//!
//! Every fallible call returns a [`PkStatus`]; on failure the message is kept
//! in a thread-local slot readable through [`pk_last_error_message`].
//! Spectra and sweeps are opaque heap handles released with their `_free`
//! function. Passing a null handle to a `_free` function is a no-op.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pekeris::pekeris::{nmax, pekeris_energy, Equation, SpinBranch};
use pekeris::presets::preset;
use pekeris::spectra::morse_lambda;
use pekeris::thermo::{self, Regime, SchottkyPeak, SpectrumTable, ThermoSweep};
use pekeris::{Error, CODATA_2018};

/// Result code of every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Domain = 3,
    OutOfRange = 4,
    EmptySpectrum = 5,
    BufferTooSmall = 6,
    Internal = 99,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PkEquation {
    KleinGordon = 0,
    Dirac = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PkBranch {
    Plus = 0,
    Minus = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PkRegime {
    NonRelativistic = 0,
    Relativistic = 1,
}

/// Heat-capacity maximum of a sweep.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PkPeak {
    pub tc_kelvin: f64,
    pub tc_celsius: f64,
    pub c_peak: f64,
}

/// Dimensionless system with its energy scales, as resolved from a preset name.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PkSystem {
    pub alpha: f64,
    pub delta: f64,
    pub hbar_omega: f64,
    pub mass_energy: f64,
}

/// Opaque level table.
pub struct PkSpectrum {
    table: SpectrumTable,
}

/// Opaque thermodynamic sweep together with its detected peaks.
pub struct PkSweep {
    sweep: ThermoSweep,
    peaks: Vec<SchottkyPeak>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> PkStatus {
    match e {
        Error::Domain(_) | Error::DegenerateChannel(_) | Error::SingularExpansion | Error::Singularity { .. } => {
            PkStatus::Domain
        }
        Error::LevelOutOfRange { .. } | Error::UnboundLevel { .. } => PkStatus::OutOfRange,
        Error::EmptySpectrum { .. } => PkStatus::EmptySpectrum,
        _ => PkStatus::InvalidArgument,
    }
}

fn fail(status: PkStatus, message: impl Into<String>) -> PkStatus {
    set_error(message.into());
    status
}

/// Runs `body`, recording errors and converting panics into `Internal`.
fn guard(body: impl FnOnce() -> Result<(), PkStatus>) -> PkStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => PkStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(PkStatus::Internal, "internal panic"),
    }
}

fn lift<T>(r: pekeris::Result<T>) -> Result<T, PkStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

fn out<'a, T>(p: *mut T) -> Result<&'a mut T, PkStatus> {
    // SAFETY: caller promises `p` is either null or valid for writes.
    unsafe { p.as_mut() }.ok_or_else(|| fail(PkStatus::NullPointer, "null output pointer"))
}

fn branch(b: PkBranch) -> SpinBranch {
    match b {
        PkBranch::Plus => SpinBranch::Plus,
        PkBranch::Minus => SpinBranch::Minus,
    }
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn pk_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Resolves a molecule name (`H2`, `LiH`, `HCl`, `CO`) or `electron-uv`.
///
/// # Safety
/// `name` must be a valid NUL-terminated string; `system` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pk_preset(name: *const c_char, system: *mut PkSystem) -> PkStatus {
    guard(|| {
        if name.is_null() {
            return Err(fail(PkStatus::NullPointer, "null preset name"));
        }
        let name = unsafe { CStr::from_ptr(name) }
            .to_str()
            .map_err(|_| fail(PkStatus::InvalidArgument, "preset name is not UTF-8"))?;
        let p = lift(preset(name, &CODATA_2018))?;
        *out(system)? = PkSystem {
            alpha: p.alpha,
            delta: p.delta,
            hbar_omega: p.hbar_omega,
            mass_energy: p.mass_energy,
        };
        Ok(())
    })
}

/// Highest bound level of a branch. Writes `-1` when no level is bound.
///
/// # Safety
/// `n_max` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pk_nmax(alpha: f64, delta: f64, branch_kind: PkBranch, n_max: *mut i64) -> PkStatus {
    guard(|| {
        if !(alpha > 0.0 && delta > 0.0) {
            return Err(fail(PkStatus::Domain, "alpha and delta must be positive and finite"));
        }
        *out(n_max)? = nmax(alpha, delta, branch(branch_kind)).map_or(-1, i64::from);
        Ok(())
    })
}

/// Reduced energy of level `n` on one branch.
///
/// # Safety
/// `energy` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pk_pekeris_energy(
    n: u32,
    alpha: f64,
    delta: f64,
    branch_kind: PkBranch,
    energy: *mut f64,
) -> PkStatus {
    guard(|| {
        *out(energy)? = lift(pekeris_energy(n, alpha, delta, branch(branch_kind)))?;
        Ok(())
    })
}

/// Quantum Morse level `n` (eV, measured from the dissociation limit) of a
/// shipped molecule.
///
/// # Safety
/// `name` must be a valid NUL-terminated string; `energy` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pk_morse_lambda(name: *const c_char, n: u32, energy: *mut f64) -> PkStatus {
    guard(|| {
        if name.is_null() {
            return Err(fail(PkStatus::NullPointer, "null molecule name"));
        }
        let name = unsafe { CStr::from_ptr(name) }
            .to_str()
            .map_err(|_| fail(PkStatus::InvalidArgument, "molecule name is not UTF-8"))?;
        let mol = lift(pekeris::molecules::builtin_molecule(name, &CODATA_2018))?;
        *out(energy)? = lift(morse_lambda(n, &mol))?;
        Ok(())
    })
}

/// Builds the recast level table of one equation. `gamma_ratio` is
/// `hbar*omega / (m c^2)` and only matters in the relativistic regime.
///
/// # Safety
/// `spectrum` must be writable. The handle must be released with [`pk_spectrum_free`].
#[no_mangle]
pub unsafe extern "C" fn pk_spectrum_new(
    alpha: f64,
    delta: f64,
    equation: PkEquation,
    regime: PkRegime,
    gamma_ratio: f64,
    spectrum: *mut *mut PkSpectrum,
) -> PkStatus {
    guard(|| {
        let slot = out(spectrum)?;
        *slot = ptr::null_mut();
        let equation = match equation {
            PkEquation::KleinGordon => Equation::KleinGordon,
            PkEquation::Dirac => Equation::Dirac,
        };
        let regime = match regime {
            PkRegime::NonRelativistic => Regime::NonRelativistic,
            PkRegime::Relativistic => Regime::Relativistic,
        };
        let table = lift(thermo::build_spectrum(alpha, delta, equation, regime, gamma_ratio))?;
        *slot = Box::into_raw(Box::new(PkSpectrum { table }));
        Ok(())
    })
}

/// # Safety
/// `spectrum` must be null or a handle from [`pk_spectrum_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pk_spectrum_free(spectrum: *mut PkSpectrum) {
    if !spectrum.is_null() {
        drop(unsafe { Box::from_raw(spectrum) });
    }
}

/// Number of levels kept after filtering.
///
/// # Safety
/// `spectrum` must be a live handle; `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pk_spectrum_len(spectrum: *const PkSpectrum, len: *mut usize) -> PkStatus {
    guard(|| {
        let s = unsafe { spectrum.as_ref() }.ok_or_else(|| fail(PkStatus::NullPointer, "null spectrum"))?;
        *out(len)? = s.table.levels.len();
        Ok(())
    })
}

/// Copies the level energies, in units of the regime's energy scale, into
/// `buffer`. Fails with `BufferTooSmall` if `capacity` is short; the
/// required length is always written to `written`.
///
/// # Safety
/// `buffer` must be valid for `capacity` writes; `written` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pk_spectrum_energies(
    spectrum: *const PkSpectrum,
    buffer: *mut f64,
    capacity: usize,
    written: *mut usize,
) -> PkStatus {
    guard(|| {
        let s = unsafe { spectrum.as_ref() }.ok_or_else(|| fail(PkStatus::NullPointer, "null spectrum"))?;
        let energies = s.table.energies();
        *out(written)? = energies.len();
        copy_out(&energies, buffer, capacity)
    })
}

fn copy_out(values: &[f64], buffer: *mut f64, capacity: usize) -> Result<(), PkStatus> {
    if capacity < values.len() {
        return Err(fail(
            PkStatus::BufferTooSmall,
            format!("buffer holds {capacity} values, {} needed", values.len()),
        ));
    }
    if values.is_empty() {
        return Ok(());
    }
    if buffer.is_null() {
        return Err(fail(PkStatus::NullPointer, "null buffer"));
    }
    // SAFETY: checked non-null, caller guarantees `capacity >= values.len()` slots.
    unsafe { ptr::copy_nonoverlapping(values.as_ptr(), buffer, values.len()) };
    Ok(())
}

/// Sweeps a log-spaced temperature grid `[t_min, t_max]` (K) and detects
/// heat-capacity peaks.
///
/// # Safety
/// `spectrum` must be a live handle; `sweep` must be writable. The result
/// must be released with [`pk_sweep_free`].
#[no_mangle]
pub unsafe extern "C" fn pk_sweep_new(
    spectrum: *const PkSpectrum,
    t_min: f64,
    t_max: f64,
    points_per_decade: usize,
    hbar_omega: f64,
    sweep: *mut *mut PkSweep,
) -> PkStatus {
    guard(|| {
        let slot = out(sweep)?;
        *slot = ptr::null_mut();
        let s = unsafe { spectrum.as_ref() }.ok_or_else(|| fail(PkStatus::NullPointer, "null spectrum"))?;
        let grid = lift(thermo::TemperatureGrid::logarithmic(t_min, t_max, points_per_decade))?;
        let result = lift(thermo::sweep(
            &s.table,
            &grid.temperatures(),
            hbar_omega,
            CODATA_2018.k_b,
        ))?;
        let peaks = thermo::schottky_peaks(&result);
        *slot = Box::into_raw(Box::new(PkSweep { sweep: result, peaks }));
        Ok(())
    })
}

/// # Safety
/// `sweep` must be null or a handle from [`pk_sweep_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pk_sweep_free(sweep: *mut PkSweep) {
    if !sweep.is_null() {
        drop(unsafe { Box::from_raw(sweep) });
    }
}

/// Number of temperatures in the sweep.
///
/// # Safety
/// `sweep` must be a live handle; `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pk_sweep_len(sweep: *const PkSweep, len: *mut usize) -> PkStatus {
    guard(|| {
        let s = unsafe { sweep.as_ref() }.ok_or_else(|| fail(PkStatus::NullPointer, "null sweep"))?;
        *out(len)? = s.sweep.len();
        Ok(())
    })
}

/// Copies the heat capacity (units of `k_B`) into `buffer`.
///
/// # Safety
/// As for [`pk_spectrum_energies`].
#[no_mangle]
pub unsafe extern "C" fn pk_sweep_heat_capacity(
    sweep: *const PkSweep,
    buffer: *mut f64,
    capacity: usize,
    written: *mut usize,
) -> PkStatus {
    guard(|| {
        let s = unsafe { sweep.as_ref() }.ok_or_else(|| fail(PkStatus::NullPointer, "null sweep"))?;
        *out(written)? = s.sweep.len();
        copy_out(&s.sweep.heat_capacity, buffer, capacity)
    })
}

/// Copies the sweep temperatures (K) into `buffer`.
///
/// # Safety
/// As for [`pk_spectrum_energies`].
#[no_mangle]
pub unsafe extern "C" fn pk_sweep_temperatures(
    sweep: *const PkSweep,
    buffer: *mut f64,
    capacity: usize,
    written: *mut usize,
) -> PkStatus {
    guard(|| {
        let s = unsafe { sweep.as_ref() }.ok_or_else(|| fail(PkStatus::NullPointer, "null sweep"))?;
        *out(written)? = s.sweep.len();
        copy_out(&s.sweep.temperatures, buffer, capacity)
    })
}

/// Copies detected peaks, ordered by temperature. `written` receives the
/// number of peaks even when the buffer is too small.
///
/// # Safety
/// `peaks` must be valid for `capacity` writes; `written` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pk_sweep_peaks(
    sweep: *const PkSweep,
    peaks: *mut PkPeak,
    capacity: usize,
    written: *mut usize,
) -> PkStatus {
    guard(|| {
        let s = unsafe { sweep.as_ref() }.ok_or_else(|| fail(PkStatus::NullPointer, "null sweep"))?;
        *out(written)? = s.peaks.len();
        if capacity < s.peaks.len() {
            return Err(fail(
                PkStatus::BufferTooSmall,
                format!("buffer holds {capacity} peaks, {} found", s.peaks.len()),
            ));
        }
        if s.peaks.is_empty() {
            return Ok(());
        }
        if peaks.is_null() {
            return Err(fail(PkStatus::NullPointer, "null peak buffer"));
        }
        for (i, p) in s.peaks.iter().enumerate() {
            // SAFETY: `i < s.peaks.len() <= capacity`.
            unsafe {
                peaks.add(i).write(PkPeak {
                    tc_kelvin: p.tc_kelvin,
                    tc_celsius: p.tc_celsius,
                    c_peak: p.c_peak,
                })
            };
        }
        Ok(())
    })
}
