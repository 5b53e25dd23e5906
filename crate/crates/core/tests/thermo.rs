use pekeris::pekeris::{Equation, SpinBranch};
use pekeris::thermo::{
    build_spectrum, log_partition, schottky_peaks, sweep, thermo_point, Regime, SpectrumLevel, SpectrumTable,
    TemperatureGrid,
};
use pekeris::{Error, CODATA_2018};
use proptest::prelude::*;

fn table(reduced: &[f64], regime: Regime, gamma_ratio: f64) -> SpectrumTable {
    let levels = reduced
        .iter()
        .enumerate()
        .map(|(n, &e)| SpectrumLevel {
            n: n as u32,
            branch: SpinBranch::Plus,
            reduced: e,
        })
        .collect();
    SpectrumTable::from_levels(levels, regime, gamma_ratio).unwrap()
}

fn levels() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.01f64..5.0, 1..15)
}

proptest! {
    #[test]
    fn entropy_and_heat_capacity_are_bounded(reduced in levels(), gamma_prime in 1e-3f64..50.0) {
        let s = table(&reduced, Regime::NonRelativistic, 0.0);
        let p = thermo_point(&s, gamma_prime).unwrap();
        prop_assert!(p.heat_capacity >= 0.0);
        prop_assert!(p.entropy >= -1e-12);
        prop_assert!(p.entropy <= (reduced.len() as f64).ln() + 1e-12);
    }

    #[test]
    fn log_partition_decreases_with_inverse_temperature(reduced in levels(), g in 0.01f64..10.0) {
        let s = table(&reduced, Regime::NonRelativistic, 0.0);
        let low = log_partition(&s, g).unwrap();
        let high = log_partition(&s, g * 1.1).unwrap();
        prop_assert!(high <= low);
    }

    #[test]
    fn relativistic_weights_reduce_to_nonrelativistic(reduced in levels(), gamma_prime in 0.05f64..5.0) {
        let ratio = 1e-9;
        let nr = table(&reduced, Regime::NonRelativistic, 0.0);
        let r = table(&reduced, Regime::Relativistic, ratio);
        // same temperature: beta_R = beta_NR / ratio
        let a = thermo_point(&nr, gamma_prime).unwrap();
        let b = thermo_point(&r, gamma_prime / ratio).unwrap();
        prop_assert!((a.heat_capacity - b.heat_capacity).abs() <= 1e-6 * a.heat_capacity.max(1e-6));
        prop_assert!((a.entropy - b.entropy).abs() <= 1e-6 * a.entropy.max(1e-6));
    }
}

#[test]
fn hot_limit_counts_every_level() {
    let reduced = [0.5, 1.0, 1.7, 2.2, 4.0];
    let s = table(&reduced, Regime::NonRelativistic, 0.0);
    let p = thermo_point(&s, 1e-8).unwrap();
    assert!((p.entropy - 5f64.ln()).abs() < 1e-6);
}

#[test]
fn nonpositive_levels_are_filtered() {
    let s = table(&[-0.2, 0.0, 0.3, 0.9], Regime::NonRelativistic, 0.0);
    assert_eq!(s.filtered, 2);
    assert_eq!(s.levels.len(), 2);
    let all_negative = SpectrumTable::from_levels(
        vec![SpectrumLevel {
            n: 0,
            branch: SpinBranch::Minus,
            reduced: -1.0,
        }],
        Regime::NonRelativistic,
        0.0,
    );
    assert!(matches!(all_negative, Err(Error::EmptySpectrum { filtered: 1 })));
}

#[test]
fn sweep_rejects_unsorted_temperatures() {
    let s = table(&[1.0, 2.0], Regime::NonRelativistic, 0.0);
    assert!(matches!(
        sweep(&s, &[10.0, 5.0], 1.0, CODATA_2018.k_b),
        Err(Error::Grid(_))
    ));
    assert!(matches!(sweep(&s, &[], 1.0, CODATA_2018.k_b), Err(Error::Grid(_))));
}

#[test]
fn two_level_peak_sits_at_the_known_ratio() {
    // C(x) = x^2 e^x/(1+e^x)^2 peaks at x = 2.399357...
    let gap_ev = 0.1;
    let s = table(&[1.0, 2.0], Regime::NonRelativistic, 0.0);
    let grid = TemperatureGrid::logarithmic(10.0, 1e5, 4000).unwrap().temperatures();
    let result = sweep(&s, &grid, gap_ev, CODATA_2018.k_b).unwrap();
    let peaks = schottky_peaks(&result);
    assert_eq!(peaks.len(), 1);
    let expected = gap_ev / (CODATA_2018.k_b * 2.399_357_280_515_467);
    assert!((peaks[0].tc_kelvin / expected - 1.0).abs() < 1e-6);
    assert!((peaks[0].c_peak - 0.439_228_839_890_645).abs() < 1e-8);
}

#[test]
fn sweep_is_reproducible() {
    let s = build_spectrum(
        1.0,
        0.219444,
        Equation::KleinGordon,
        Regime::Relativistic,
        124.0 / 511e3,
    )
    .unwrap();
    let grid = TemperatureGrid::logarithmic(1e3, 1e8, 100).unwrap().temperatures();
    let a = sweep(&s, &grid, 124.0, CODATA_2018.k_b).unwrap();
    let b = sweep(&s, &grid, 124.0, CODATA_2018.k_b).unwrap();
    assert_eq!(a, b);
}
