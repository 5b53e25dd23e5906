//! Command-line front end: spectra, thermodynamic sweeps, Pekeris mapping,
//! Riccati classification and the oracle validation suite.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::molecules::{builtin_molecule, load_molecules};
use crate::pekeris::{
    effective_morse, homographic_centered, lennard_jones_1269, morse, pekeris_levels, pekeris_map, tabulated_from_csv,
    CouplingSpec, Equation, MapOptions, SpinAngularChannel, SpinBranch, Truncation,
};
use crate::presets::{preset, SystemPreset};
use crate::riccati::{factorize, solve_riccati, verify_solution, Factorizable, RiccatiSpec, Sheet};
use crate::thermo::{build_spectrum, schottky_peaks, sweep, Regime, TemperatureGrid};
use crate::units::{OscillatorParams, PhysicalConstants, CODATA_2018};
use crate::validate::run_suite;

#[derive(Debug, Parser)]
#[command(
    name = "pekeris",
    version,
    about = "Relativistic Morse spectra, Pekeris mappings and Schottky thermodynamics"
)]
pub struct Cli {
    /// JSON file overriding hbar_c, amu_to_ev and k_b.
    #[arg(long, env = "PEKERIS_CONSTANTS", global = true)]
    pub constants: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bound levels of a channel as CSV (N, branch, energies).
    Spectrum(SpectrumArgs),
    /// Canonical-ensemble sweep and Schottky peaks.
    Thermo(ThermoArgs),
    /// Pekeris mapping of a coupling.
    Map(MapArgs),
    /// Classify and sample a constant-coefficient Riccati coupling.
    Riccati(RiccatiArgs),
    /// Closed forms against the finite-difference oracle.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EquationArg {
    Kg,
    Dirac,
}

impl From<EquationArg> for Equation {
    fn from(e: EquationArg) -> Self {
        match e {
            EquationArg::Kg => Equation::KleinGordon,
            EquationArg::Dirac => Equation::Dirac,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Plus,
    Minus,
}

impl From<BranchArg> for SpinBranch {
    fn from(b: BranchArg) -> Self {
        match b {
            BranchArg::Plus => SpinBranch::Plus,
            BranchArg::Minus => SpinBranch::Minus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    Nr,
    R,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    /// Recast S-wave formula in units of hbar w.
    Recast,
    /// Effective Morse reduction with the full constants.
    Full,
    /// Effective Morse reduction at first order in delta.
    Linearized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SheetArg {
    Singular,
    Regular,
}

/// A named system or an explicit parameter set.
#[derive(Debug, Clone, Args)]
pub struct SystemArgs {
    /// Molecule or preset name (H2, LiH, HCl, CO, electron-uv).
    #[arg(long, visible_alias = "preset", conflicts_with_all = ["alpha", "delta"])]
    pub molecule: Option<String>,
    /// JSON-lines molecule table searched before the built-in one.
    #[arg(long)]
    pub molecule_file: Option<PathBuf>,
    #[arg(long, requires = "delta")]
    pub alpha: Option<f64>,
    #[arg(long, requires = "alpha")]
    pub delta: Option<f64>,
    /// Oscillator quantum (eV) for explicit parameters.
    #[arg(long, default_value_t = 1.0)]
    pub hbar_omega: f64,
    /// Rest energy (eV) for explicit parameters.
    #[arg(long)]
    pub mass_energy: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct ChannelArgs {
    #[arg(long, value_enum, default_value = "dirac")]
    pub equation: EquationArg,
    #[arg(long, default_value_t = 0)]
    pub l: u32,
    /// One spin branch; both when omitted (Dirac).
    #[arg(long, value_enum)]
    pub branch: Option<BranchArg>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    pub channel: ChannelArgs,
    /// Level formula; `recast` needs l = 0, default is recast at l = 0 and full otherwise.
    #[arg(long, value_enum)]
    pub model: Option<ModelArg>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ThermoArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[arg(long, value_enum, default_value = "dirac")]
    pub equation: EquationArg,
    /// Statistical weights; relativistic for electron-uv and nonrelativistic otherwise.
    #[arg(long, value_enum)]
    pub regime: Option<RegimeArg>,
    #[arg(long, default_value_t = 1.0)]
    pub tmin: f64,
    #[arg(long, default_value_t = 1e8)]
    pub tmax: f64,
    #[arg(long, default_value_t = 2000)]
    pub points_per_decade: usize,
    /// Peaks JSON destination in CSV mode (stderr when omitted).
    #[arg(long)]
    pub peaks: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct MapArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    pub channel: ChannelArgs,
    /// morse, lj1269, homographic or table:<path>
    #[arg(long, default_value = "morse")]
    pub coupling: String,
    /// Homographic coefficients a,c,d (b = -a).
    #[arg(long, value_delimiter = ',', default_values_t = [1.0, 0.5, 0.5], allow_negative_numbers = true)]
    pub homographic: Vec<f64>,
    /// Riccati coefficients a2,a1,a0 (a trailing K is ignored) used to factorize.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub riccati: Option<Vec<f64>>,
    /// Drop the cubic remainder of the expansion.
    #[arg(long)]
    pub drop_cubic: bool,
    #[arg(long)]
    pub rmin: Option<f64>,
    #[arg(long)]
    pub rmax: Option<f64>,
    #[arg(long, default_value_t = 201)]
    pub samples: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct RiccatiArgs {
    /// a2,a1,a0,K
    #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
    pub riccati: Vec<f64>,
    #[arg(long, value_enum, default_value = "singular")]
    pub sheet: SheetArg,
    #[arg(long, default_value_t = -2.0, allow_negative_numbers = true)]
    pub rmin: f64,
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    pub rmax: f64,
    #[arg(long, default_value_t = 201)]
    pub samples: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Fixed 17-significant-digit float formatting for byte-stable CSV.
pub fn fmt_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

fn emit(out: &Option<PathBuf>, stdout: &mut dyn Write, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| io_error(path, e)),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| io_error(Path::new("<stdout>"), e)),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).unwrap_or_else(|_| "null".into());
    s.push('\n');
    s
}

fn load_constants(path: &Option<PathBuf>) -> Result<PhysicalConstants> {
    match path {
        Some(p) => PhysicalConstants::from_file(p),
        None => Ok(CODATA_2018),
    }
}

struct System {
    preset: SystemPreset,
    /// Dimensionful parameters when a rest energy is known.
    params: Option<OscillatorParams>,
}

fn resolve_system(args: &SystemArgs, constants: &PhysicalConstants) -> Result<System> {
    if let Some(name) = &args.molecule {
        if let Some(file) = &args.molecule_file {
            if let Some(m) = load_molecules(file, constants)?
                .into_iter()
                .find(|m| m.name.eq_ignore_ascii_case(name))
            {
                let params = m.oscillator(constants.hbar_c)?;
                return Ok(System {
                    preset: SystemPreset::from_molecule(&m),
                    params: Some(params),
                });
            }
        }
        let p = preset(name, constants)?;
        let params = match builtin_molecule(name, constants) {
            Ok(m) => m.oscillator(constants.hbar_c)?,
            Err(_) => {
                OscillatorParams::from_dimensionless(p.alpha, p.delta, p.hbar_omega, p.mass_energy, constants.hbar_c)?
            }
        };
        return Ok(System {
            preset: p,
            params: Some(params),
        });
    }
    match (args.alpha, args.delta) {
        (Some(alpha), Some(delta)) => {
            let mass_energy = args.mass_energy.unwrap_or(f64::NAN);
            let params = match args.mass_energy {
                Some(m) => Some(OscillatorParams::from_dimensionless(
                    alpha,
                    delta,
                    args.hbar_omega,
                    m,
                    constants.hbar_c,
                )?),
                None => None,
            };
            Ok(System {
                preset: SystemPreset {
                    name: "explicit".into(),
                    alpha,
                    delta,
                    hbar_omega: args.hbar_omega,
                    mass_energy,
                },
                params,
            })
        }
        _ => Err(Error::InvalidParameter(
            "exactly one of --molecule or the explicit pair --alpha/--delta is required".into(),
        )),
    }
}

fn require_params(system: &System, what: &str) -> Result<OscillatorParams> {
    system.params.ok_or_else(|| {
        Error::InvalidParameter(format!(
            "{what} needs dimensionful parameters: pass --mass-energy with --alpha/--delta"
        ))
    })
}

fn branches(channel: &ChannelArgs) -> Vec<SpinBranch> {
    match (channel.branch, Equation::from(channel.equation)) {
        (Some(b), _) => vec![b.into()],
        (None, Equation::Dirac) => vec![SpinBranch::Plus, SpinBranch::Minus],
        (None, Equation::KleinGordon) => vec![SpinBranch::Plus],
    }
}

fn run_spectrum(args: &SpectrumArgs, constants: &PhysicalConstants, stdout: &mut dyn Write) -> Result<()> {
    let system = resolve_system(&args.system, constants)?;
    let model = args.model.unwrap_or(if args.channel.l == 0 {
        ModelArg::Recast
    } else {
        ModelArg::Full
    });
    let equation = Equation::from(args.channel.equation);
    let hw = system.preset.hbar_omega;
    // (N, branch, energy in hbar w)
    let mut rows: Vec<(u32, SpinBranch, f64)> = Vec::new();
    for branch in branches(&args.channel) {
        match model {
            ModelArg::Recast => {
                if args.channel.l != 0 {
                    return Err(Error::InvalidParameter(
                        "the recast formula covers l = 0 only; use --model full".into(),
                    ));
                }
                // Klein-Gordon carries f = 0, the plus-branch formula
                let b = if equation == Equation::KleinGordon {
                    SpinBranch::Plus
                } else {
                    branch
                };
                for (n, e) in pekeris_levels(system.preset.alpha, system.preset.delta, b)?
                    .into_iter()
                    .enumerate()
                {
                    rows.push((n as u32, branch, e));
                }
            }
            ModelArg::Full | ModelArg::Linearized => {
                let params = require_params(&system, "the effective Morse model")?;
                let truncation = if model == ModelArg::Full {
                    Truncation::Full
                } else {
                    Truncation::Linearized
                };
                let channel = SpinAngularChannel::new(equation, args.channel.l, branch);
                let em = effective_morse(&params, &channel, truncation)?;
                if let Some(max) = em.nmax() {
                    for n in 0..=max {
                        rows.push((n, branch, em.energy(n)? / params.hbar_omega));
                    }
                }
            }
        }
    }
    match args.output.format {
        Format::Csv => {
            let mut s = String::from("N,branch,energy_hbar_omega,energy_eV\n");
            for (n, b, e) in &rows {
                let _ = writeln!(s, "{n},{},{},{}", b.label(), fmt_float(*e), fmt_float(e * hw));
            }
            emit(&args.output.out, stdout, &s)
        }
        Format::Json => {
            let levels: Vec<Value> = rows
                .iter()
                .map(|(n, b, e)| json!({"N": n, "branch": b.label(), "energy_hbar_omega": e, "energy_eV": e * hw}))
                .collect();
            let doc = json!({
                "system": system.preset.name,
                "alpha": system.preset.alpha,
                "delta": system.preset.delta,
                "hbar_omega_eV": hw,
                "equation": format!("{equation:?}"),
                "l": args.channel.l,
                "levels": levels,
            });
            emit(&args.output.out, stdout, &pretty(&doc))
        }
    }
}

fn run_thermo(
    args: &ThermoArgs,
    constants: &PhysicalConstants,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<()> {
    let system = resolve_system(&args.system, constants)?;
    let p = &system.preset;
    let regime = match args.regime {
        Some(RegimeArg::R) => Regime::Relativistic,
        Some(RegimeArg::Nr) => Regime::NonRelativistic,
        None if p.name.eq_ignore_ascii_case("electron-uv") => Regime::Relativistic,
        None => Regime::NonRelativistic,
    };
    let gamma_ratio = p.gamma_ratio();
    if regime == Regime::Relativistic && !gamma_ratio.is_finite() {
        return Err(Error::InvalidParameter(
            "relativistic regime needs --mass-energy".into(),
        ));
    }
    let spectrum = build_spectrum(p.alpha, p.delta, args.equation.into(), regime, gamma_ratio)?;
    let grid = TemperatureGrid::logarithmic(args.tmin, args.tmax, args.points_per_decade)?.temperatures();
    let result = sweep(&spectrum, &grid, p.hbar_omega, constants.k_b)?;
    let peaks = schottky_peaks(&result);
    let scale = result.energy_scale;
    let peaks_doc = json!({
        "system": p.name,
        "equation": format!("{:?}", Equation::from(args.equation)),
        "regime": regime,
        "levels": spectrum.levels.len(),
        "filtered": spectrum.filtered,
        "energy_scale_eV": scale,
        "peaks": peaks,
    });
    match args.output.format {
        Format::Csv => {
            let mut s = String::with_capacity(grid.len() * 140);
            s.push_str("T_K,T_C,U,F,S,C\n");
            for i in 0..result.len() {
                let t = result.temperatures[i];
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    fmt_float(t),
                    fmt_float(t - crate::units::CELSIUS_OFFSET),
                    fmt_float(result.internal_energy[i] * scale),
                    fmt_float(result.free_energy[i] * scale),
                    fmt_float(result.entropy[i]),
                    fmt_float(result.heat_capacity[i]),
                );
            }
            emit(&args.output.out, stdout, &s)?;
            let text = pretty(&peaks_doc);
            match &args.peaks {
                Some(path) => fs::write(path, text).map_err(|e| io_error(path, e)),
                None => stderr
                    .write_all(text.as_bytes())
                    .map_err(|e| io_error(Path::new("<stderr>"), e)),
            }
        }
        Format::Json => {
            let mut doc = peaks_doc;
            doc["sweep"] = json!({
                "T_K": result.temperatures,
                "U_eV": result.internal_energy.iter().map(|u| u * scale).collect::<Vec<_>>(),
                "F_eV": result.free_energy.iter().map(|f| f * scale).collect::<Vec<_>>(),
                "S": result.entropy,
                "C": result.heat_capacity,
            });
            emit(&args.output.out, stdout, &pretty(&doc))
        }
    }
}

fn build_coupling(args: &MapArgs, params: &OscillatorParams) -> Result<(CouplingSpec, Option<RiccatiSpec>)> {
    let name = args.coupling.as_str();
    if let Some(path) = name.strip_prefix("table:") {
        return Ok((tabulated_from_csv(path, params.gamma, params.r_e)?, None));
    }
    match name {
        "morse" => {
            let g = params.gamma;
            Ok((morse(g, params.r_e)?, Some(RiccatiSpec::new(0.0, g, 1.0, 0.0))))
        }
        "lj1269" => Ok((lennard_jones_1269(params.r_e)?, None)),
        "homographic" => {
            let [a, c, d] = match args.homographic[..] {
                [a, c, d] => [a, c, d],
                _ => return Err(Error::InvalidParameter("--homographic needs a,c,d".into())),
            };
            let coupling = homographic_centered(a, c, d, params.r_e)?;
            let g = coupling.gamma;
            let det = a * d + a * c;
            let spec = RiccatiSpec::new(g * g * c * c / det, -2.0 * a * g * c / det, a * a / det, 0.0);
            Ok((coupling, Some(spec)))
        }
        other => Err(Error::InvalidParameter(format!(
            "unknown coupling `{other}` (morse, lj1269, homographic, table:<path>)"
        ))),
    }
}

fn run_map(args: &MapArgs, constants: &PhysicalConstants, stdout: &mut dyn Write) -> Result<()> {
    let system = resolve_system(&args.system, constants)?;
    let params = require_params(&system, "the Pekeris mapping")?;
    let (coupling, known_spec) = build_coupling(args, &params)?;
    let branch = args.channel.branch.map_or(SpinBranch::Plus, SpinBranch::from);
    let channel = SpinAngularChannel::new(args.channel.equation.into(), args.channel.l, branch);
    let mapped = pekeris_map(
        &coupling,
        &params,
        &channel,
        MapOptions {
            drop_a2: args.drop_cubic,
        },
    )?;
    let spec = match &args.riccati {
        Some(v) if v.len() >= 3 => Some(RiccatiSpec::new(v[0], v[1], v[2], v.get(3).copied().unwrap_or(0.0))),
        Some(_) => return Err(Error::InvalidParameter("--riccati needs a2,a1,a0".into())),
        None => known_spec,
    };
    let r_e = coupling.r_e;
    let (lo, hi) = coupling.domain();
    let rmin = args.rmin.unwrap_or((0.5 * r_e).max(lo));
    let rmax = args.rmax.unwrap_or((2.0 * r_e).min(hi));
    if !(rmax > rmin) || args.samples < 2 {
        return Err(Error::Grid(format!(
            "need rmin < rmax and >= 2 samples, got [{rmin}, {rmax}]"
        )));
    }
    match args.output.format {
        Format::Csv => {
            let mut s = String::from("r,U,effective,expanded,radial\n");
            for i in 0..args.samples {
                let r = rmin + (rmax - rmin) * i as f64 / (args.samples - 1) as f64;
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    fmt_float(r),
                    fmt_float(coupling.value(r)),
                    fmt_float(mapped.effective_potential(r)),
                    fmt_float(mapped.expanded_potential(r)),
                    fmt_float(mapped.radial_potential(r)),
                );
            }
            emit(&args.output.out, stdout, &s)
        }
        Format::Json => {
            let (q2, q1, q0) = mapped.quadratic_coefficients();
            let factorized = spec.map(|spec| match factorize(Factorizable::Mapped(&mapped), &spec) {
                Ok(f) => json!({"K1": f.k1, "K2": f.k2, "K3": f.k3}),
                Err(e) => json!({"error": {"kind": e.kind(), "message": e.to_string()}}),
            });
            let c = mapped.coeffs;
            let doc = json!({
                "coupling": coupling.name,
                "gamma": coupling.gamma,
                "r_e": r_e,
                "f_derivatives": coupling.f_derivatives,
                "channel": {"equation": channel.equation, "l": channel.l, "branch": channel.branch, "f": channel.f()},
                "coefficients": {"c0": c.c0, "a1": c.a1, "a2": c.a2, "b1": c.b1, "b2": c.b2},
                "constants_eV": {"A1": mapped.a1_const, "A2": mapped.a2_const, "A3": mapped.a3_const},
                "quadratic": {"U2": q2, "U1": q1, "U0": q0},
                "factorized": factorized,
            });
            emit(&args.output.out, stdout, &pretty(&doc))
        }
    }
}

fn run_riccati(args: &RiccatiArgs, stdout: &mut dyn Write) -> Result<()> {
    let v = &args.riccati;
    if v.len() != 4 {
        return Err(Error::InvalidParameter(format!(
            "--riccati needs a2,a1,a0,K, got {} values",
            v.len()
        )));
    }
    let sheet = match args.sheet {
        SheetArg::Singular => Sheet::Singular,
        SheetArg::Regular => Sheet::Regular,
    };
    let spec = RiccatiSpec::new(v[0], v[1], v[2], v[3]).with_sheet(sheet);
    let sol = solve_riccati(spec)?;
    if !(args.rmax > args.rmin) || args.samples < 2 {
        return Err(Error::Grid(format!(
            "need rmin < rmax and >= 2 samples, got [{}, {}]",
            args.rmin, args.rmax
        )));
    }
    let rs: Vec<f64> = (0..args.samples)
        .map(|i| args.rmin + (args.rmax - args.rmin) * i as f64 / (args.samples - 1) as f64)
        .collect();
    let samples: Vec<(f64, Option<f64>)> = rs.iter().map(|&r| (r, sol.eval(r).ok())).collect();
    match args.output.format {
        Format::Csv => {
            let mut s = format!(
                "# family={} form={} discriminant={}\nr,U\n",
                sol.family.label(),
                sol.form_name(),
                fmt_float(spec.discriminant())
            );
            for (r, u) in samples {
                if let Some(u) = u {
                    let _ = writeln!(s, "{},{}", fmt_float(r), fmt_float(u));
                }
            }
            emit(&args.output.out, stdout, &s)
        }
        Format::Json => {
            let check = verify_solution(&sol, &spec, &rs);
            let doc = json!({
                "coefficients": {"a2": spec.quadratic, "a1": spec.linear, "a0": spec.constant, "K": spec.k},
                "discriminant": spec.discriminant(),
                "family": sol.family.label(),
                "form": sol.form_name(),
                "expression": sol.expression(),
                "poles": sol.poles_in(args.rmin, args.rmax),
                "ode_residual": check.max_residual,
                "skipped_near_poles": check.skipped.len(),
                "samples": samples.iter().map(|(r, u)| json!([r, u])).collect::<Vec<_>>(),
            });
            emit(&args.output.out, stdout, &pretty(&doc))
        }
    }
}

/// Runs a parsed command. `Ok(false)` means the command ran but reported failure.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<bool> {
    let constants = load_constants(&cli.constants)?;
    match &cli.command {
        Command::Spectrum(a) => run_spectrum(a, &constants, stdout).map(|_| true),
        Command::Thermo(a) => run_thermo(a, &constants, stdout, stderr).map(|_| true),
        Command::Map(a) => run_map(a, &constants, stdout).map(|_| true),
        Command::Riccati(a) => run_riccati(a, stdout).map(|_| true),
        Command::Validate(a) => {
            let report = run_suite(&constants)?;
            let text = pretty(&serde_json::to_value(&report).unwrap_or(Value::Null));
            emit(&a.out, stdout, &text)?;
            Ok(report.passed)
        }
    }
}

/// Machine-readable error report.
pub fn error_json(e: &Error) -> String {
    json!({"error": {"kind": e.kind(), "message": e.to_string()}}).to_string()
}

/// Process entry point: parses `args`, runs, and returns the exit status
/// (0 success, 1 failed validation, 2 error).
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let text = e.to_string();
            let err = Error::InvalidParameter(text.trim().trim_start_matches("error: ").to_string());
            let _ = writeln!(stderr, "{}", error_json(&err));
            return 2;
        }
    };
    match run(&cli, stdout, stderr) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(stderr, "{}", error_json(&e));
            2
        }
    }
}
