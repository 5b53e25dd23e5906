use std::ffi::{CStr, CString};
use std::ptr;

use pekeris_ffi::*;

fn last_error() -> String {
    let p = pk_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn nmax_matches_core() {
    let mut n = 0i64;
    assert_eq!(unsafe { pk_nmax(1.0, 0.219444, PkBranch::Plus, &mut n) }, PkStatus::Ok);
    assert_eq!(n, 6);
    assert_eq!(unsafe { pk_nmax(1.0, 0.219444, PkBranch::Minus, &mut n) }, PkStatus::Ok);
    assert_eq!(n, 3);
}

#[test]
fn energy_agrees_with_core() {
    let mut e = 0.0;
    assert_eq!(
        unsafe { pk_pekeris_energy(2, 1.0, 0.219444, PkBranch::Plus, &mut e) },
        PkStatus::Ok
    );
    let expected = pekeris::pekeris::pekeris_energy(2, 1.0, 0.219444, pekeris::pekeris::SpinBranch::Plus).unwrap();
    assert_eq!(e, expected);
}

#[test]
fn unbound_level_reports_out_of_range() {
    let mut e = 0.0;
    let status = unsafe { pk_pekeris_energy(50, 1.0, 0.219444, PkBranch::Plus, &mut e) };
    assert_eq!(status, PkStatus::OutOfRange);
    assert!(!last_error().is_empty());
}

#[test]
fn null_output_is_rejected() {
    let status = unsafe { pk_pekeris_energy(0, 1.0, 0.219444, PkBranch::Plus, ptr::null_mut()) };
    assert_eq!(status, PkStatus::NullPointer);
}

#[test]
fn success_clears_last_error() {
    let mut e = 0.0;
    unsafe { pk_pekeris_energy(50, 1.0, 0.219444, PkBranch::Plus, &mut e) };
    unsafe { pk_pekeris_energy(0, 1.0, 0.219444, PkBranch::Plus, &mut e) };
    assert!(pk_last_error_message().is_null());
}

#[test]
fn morse_ground_level_of_hydrogen() {
    let name = CString::new("H2").unwrap();
    let mut e = 0.0;
    assert_eq!(unsafe { pk_morse_lambda(name.as_ptr(), 0, &mut e) }, PkStatus::Ok);
    assert!((e - 4.4760131).abs() < 1e-3, "{e}");
    let bad = CString::new("XeF9").unwrap();
    assert_eq!(
        unsafe { pk_morse_lambda(bad.as_ptr(), 0, &mut e) },
        PkStatus::InvalidArgument
    );
}

#[test]
fn electron_sweep_has_one_peak() {
    let name = CString::new("electron-uv").unwrap();
    let mut sys = PkSystem::default();
    assert_eq!(unsafe { pk_preset(name.as_ptr(), &mut sys) }, PkStatus::Ok);

    let mut spectrum = ptr::null_mut();
    let status = unsafe {
        pk_spectrum_new(
            sys.alpha,
            sys.delta,
            PkEquation::Dirac,
            PkRegime::Relativistic,
            sys.hbar_omega / sys.mass_energy,
            &mut spectrum,
        )
    };
    assert_eq!(status, PkStatus::Ok);
    let mut len = 0;
    assert_eq!(unsafe { pk_spectrum_len(spectrum, &mut len) }, PkStatus::Ok);
    assert_eq!(len, 11);

    let mut short = [0.0; 3];
    let mut written = 0;
    let status = unsafe { pk_spectrum_energies(spectrum, short.as_mut_ptr(), short.len(), &mut written) };
    assert_eq!(status, PkStatus::BufferTooSmall);
    assert_eq!(written, 11);

    let mut sweep = ptr::null_mut();
    let status = unsafe { pk_sweep_new(spectrum, 1e3, 1e8, 200, sys.hbar_omega, &mut sweep) };
    assert_eq!(status, PkStatus::Ok);
    let mut peaks = [PkPeak::default(); 4];
    let status = unsafe { pk_sweep_peaks(sweep, peaks.as_mut_ptr(), peaks.len(), &mut written) };
    assert_eq!(status, PkStatus::Ok);
    assert_eq!(written, 1);
    assert!((peaks[0].c_peak - 0.853).abs() < 0.01);

    let mut n = 0;
    unsafe { pk_sweep_len(sweep, &mut n) };
    let mut cap = vec![0.0; n];
    assert_eq!(
        unsafe { pk_sweep_heat_capacity(sweep, cap.as_mut_ptr(), n, &mut written) },
        PkStatus::Ok
    );
    assert!(cap.iter().all(|c| c.is_finite() && *c >= 0.0));

    unsafe {
        pk_sweep_free(sweep);
        pk_spectrum_free(spectrum);
        pk_sweep_free(ptr::null_mut());
        pk_spectrum_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_every_entry_point() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/pekeris.h")).unwrap();
    for f in [
        "pk_last_error_message",
        "pk_version",
        "pk_preset",
        "pk_nmax",
        "pk_pekeris_energy",
        "pk_morse_lambda",
        "pk_spectrum_new",
        "pk_spectrum_free",
        "pk_spectrum_energies",
        "pk_sweep_new",
        "pk_sweep_free",
        "pk_sweep_peaks",
        "pk_sweep_heat_capacity",
        "pk_sweep_temperatures",
    ] {
        assert!(header.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(header.contains("typedef struct PkSpectrum PkSpectrum;"));
}

#[test]
fn header_compiles_as_c() {
    let include = concat!(env!("CARGO_MANIFEST_DIR"), "/include");
    let dir = tempfile_dir();
    let src = dir.join("probe.c");
    std::fs::write(
        &src,
        "#include \"pekeris.h\"\nint main(void) { PkSpectrum *s = 0; pk_spectrum_free(s); return PK_STATUS_OK; }\n",
    )
    .unwrap();
    let Ok(status) = std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I", include])
        .arg(&src)
        .status()
    else {
        eprintln!("no C compiler on PATH; skipping");
        return;
    };
    assert!(status.success());
}

fn tempfile_dir() -> std::path::PathBuf {
    let dir = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("ffi-probe");
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
