use approx::assert_relative_eq;
use pekeris::pekeris::{effective_morse, SpinAngularChannel, Truncation};
use pekeris::riccati::{
    factorize, solve_riccati, table4_coupling, verify_solution, Factorizable, RiccatiFamily, RiccatiSpec, Sheet,
    Table4Kind,
};
use pekeris::units::OscillatorParams;
use pekeris::Error;
use proptest::prelude::*;

fn coefficient() -> impl Strategy<Value = f64> {
    prop_oneof![Just(0.0), -2.0f64..2.0]
}

fn sheet() -> impl Strategy<Value = Sheet> {
    prop_oneof![Just(Sheet::Singular), Just(Sheet::Regular)]
}

fn spec() -> impl Strategy<Value = RiccatiSpec> {
    (coefficient(), coefficient(), coefficient(), -1.0f64..1.0, sheet())
        .prop_filter("non-trivial right-hand side", |(a2, a1, a0, _, _)| {
            a2.abs() > 1e-3 || a1.abs() > 1e-3 || a0.abs() > 1e-3
        })
        .prop_filter("non-zero exponential amplitude", |(_, _, _, k, _)| k.abs() > 1e-3)
        .prop_map(|(a2, a1, a0, k, sheet)| RiccatiSpec::new(a2, a1, a0, k).with_sheet(sheet))
}

proptest! {
    #[test]
    fn closed_forms_solve_their_equation(spec in spec()) {
        let sol = solve_riccati(spec).unwrap();
        let sample: Vec<f64> = (0..100).map(|i| -2.0 + 4.0 * (i as f64 + 0.5) / 100.0).collect();
        let check = verify_solution(&sol, &spec, &sample);
        prop_assert!(check.max_residual < 1e-8, "{:?}: residual {}", spec, check.max_residual);
        prop_assert_eq!(check.checked + check.skipped.len(), 100);
    }

    #[test]
    fn family_follows_the_discriminant(spec in spec()) {
        let family = spec.family();
        let d = spec.discriminant();
        if spec.quadratic == 0.0 {
            prop_assert!(matches!(family, RiccatiFamily::ExponentialHyperbolic | RiccatiFamily::Affine));
        } else if d > 0.0 {
            prop_assert_eq!(family, RiccatiFamily::Trigonometric);
        } else if d < 0.0 {
            prop_assert_eq!(family, RiccatiFamily::ExponentialHyperbolic);
        } else {
            prop_assert_eq!(family, RiccatiFamily::Rational);
        }
    }

    #[test]
    fn inverse_recovers_the_abscissa(spec in spec(), r_ref in -1.5f64..1.5) {
        let sol = solve_riccati(spec).unwrap();
        prop_assume!(sol.eval(r_ref).is_ok());
        let Ok(local) = sol.around(r_ref) else { return Ok(()) };
        let u = local.eval(r_ref).unwrap();
        prop_assume!(u.is_finite() && u.abs() < 1e8);
        let r = local.inverse(u).unwrap();
        prop_assert!((r - r_ref).abs() <= 1e-8 * (1.0 + r_ref.abs()), "{r} vs {r_ref}");
    }
}

#[test]
fn table_rows_reject_forbidden_signs() {
    assert!(matches!(
        table4_coupling(Table4Kind::Morse { a: 0.5, k: 1.0 }),
        Err(Error::InvalidParameter(_))
    ));
    assert!(matches!(
        table4_coupling(Table4Kind::Coulomb { a2: 0.0, k: 1.0 }),
        Err(Error::InvalidParameter(_))
    ));
    assert!(matches!(
        table4_coupling(Table4Kind::Harmonic { a0: -1.0, k: 0.0 }),
        Err(Error::InvalidParameter(_))
    ));
    assert!(matches!(
        table4_coupling(Table4Kind::QuotientExponential { a2: 0.0, k: 0.0 }),
        Err(Error::InvalidParameter(_))
    ));
}

#[test]
fn morse_row_is_the_shifted_exponential() {
    let (_, sol) = table4_coupling(Table4Kind::Morse { a: -0.8, k: 1.7 }).unwrap();
    for r in [-1.0, 0.0, 0.4, 3.0] {
        assert_relative_eq!(sol.eval(r).unwrap(), 1.7 * (-0.8 * r).exp() - 1.0, max_relative = 1e-14);
    }
}

#[test]
fn singular_sheet_reports_its_pole() {
    let sol = solve_riccati(RiccatiSpec::new(-1.0, 1.0, 3.0, 0.2)).unwrap();
    assert_eq!(sol.family, RiccatiFamily::ExponentialHyperbolic);
    let poles = sol.poles_in(-5.0, 5.0);
    assert_eq!(poles.len(), 1);
    assert!(matches!(sol.eval(poles[0]), Err(Error::Singularity { .. })));
    let regular = solve_riccati(RiccatiSpec::new(-1.0, 1.0, 3.0, 0.2).with_sheet(Sheet::Regular)).unwrap();
    assert!(regular.poles_in(-5.0, 5.0).is_empty());
}

#[test]
fn morse_factorization_matches_expanded_operator() {
    let params = OscillatorParams::with_hbar_c(1.0, 1.0, -0.2, 2.0, 1.0).unwrap();
    let em = effective_morse(&params, &SpinAngularChannel::kg(0), Truncation::Full).unwrap();
    let spec = RiccatiSpec::new(0.0, params.gamma, 1.0, 0.0);
    let form = factorize(Factorizable::Morse(&em), &spec).unwrap();
    let gamma = params.gamma;
    let r_e = params.r_e;
    let u = move |r: f64| (gamma * (r - r_e)).exp_m1() / gamma;
    let du = move |r: f64| (gamma * (r - r_e)).exp();
    let phi = |r: f64| (-(r - 2.3f64).powi(2)).exp();
    for r in [1.5, 2.0, 2.6, 3.1] {
        let a = form.apply_factorized(&u, &phi, r, params.mass, params.hbar_c, 1e-3);
        let b = form.apply_expanded(&u, &du, &phi, r, params.mass, params.hbar_c, 1e-3);
        assert_relative_eq!(a, b, max_relative = 1e-7, epsilon = 1e-9);
    }
}
