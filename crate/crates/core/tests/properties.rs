use std::f64::consts::PI;

use conformal_skorohod::construction::{
    build_profile, conjugate_series, cosine_coefficients, synthesize, ConstructionConfig, Sampling,
};
use conformal_skorohod::geometry::fixtures;
use conformal_skorohod::hilbert::{hilbert_spectral, lp_norm, PeriodicFunction};
use conformal_skorohod::measures::{Atom, Builtin, MeasureSpec};
use conformal_skorohod::simulate::{euler_exit, wos_exit, EulerOptions, WosOptions};
use conformal_skorohod::stats::{ks_one_sample, ks_two_sample, kolmogorov_critical_99};
use num_complex::Complex64;
use proptest::prelude::*;

/// Centered two-atom law `{lo, hi}` with `lo < 0 < hi`.
fn two_atoms() -> impl Strategy<Value = MeasureSpec> {
    (0.1f64..3.0, 0.1f64..3.0).prop_map(|(l, h)| {
        let w = h / (l + h);
        MeasureSpec::discrete(vec![Atom { x: -l, weight: w }, Atom { x: h, weight: 1.0 - w }], 3.0).unwrap()
    })
}

fn builtin() -> impl Strategy<Value = MeasureSpec> {
    prop_oneof![
        (0.2f64..3.0).prop_map(|a| MeasureSpec::builtin(Builtin::Uniform { a: -a, b: a }, 4.0).unwrap()),
        (0.2f64..3.0).prop_map(|s| MeasureSpec::builtin(Builtin::Gaussian { sigma: s }, 4.0).unwrap()),
        (0.2f64..3.0).prop_map(|b| MeasureSpec::builtin(Builtin::Laplace { b }, 4.0).unwrap()),
        (0.2f64..3.0).prop_map(|c| MeasureSpec::builtin(Builtin::TwoPoint { c }, 4.0).unwrap()),
        (0.2f64..3.0).prop_map(|r| MeasureSpec::builtin(Builtin::Arcsine { r }, 4.0).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn profile_is_even_and_conjugate_is_odd(spec in prop_oneof![builtin(), two_atoms()]) {
        let m = 2048;
        let prof = build_profile(&spec.quantile(), m, Sampling::CellAverage).unwrap();
        for j in 0..m {
            prop_assert_eq!(prof.phi[j], prof.phi[m - 1 - j]);
        }
        let a = cosine_coefficients(&prof, 512).unwrap().a;
        let y = conjugate_series(&a, m);
        let scale = y.iter().fold(1.0f64, |s, v| s.max(v.abs()));
        for j in 0..m {
            prop_assert!((y[j] + y[m - 1 - j]).abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn profile_values_rearrange_to_the_law(spec in prop_oneof![builtin(), two_atoms()]) {
        let m = 4096;
        let prof = build_profile(&spec.quantile(), m, Sampling::Point).unwrap();
        let ks = ks_one_sample(&prof.phi, |x| spec.cdf_pair(x));
        prop_assert!(ks.statistic < 2.0 / (m as f64).sqrt(), "{:?}", ks);
    }

    #[test]
    fn parseval_matches_second_moment(spec in two_atoms()) {
        let art = synthesize(&spec, ConstructionConfig::new(1 << 11, 1 << 13)).unwrap();
        let var = spec.moment(2.0).unwrap();
        prop_assert!((art.diagnostics.parseval_etau - var).abs() <= 2e-3 * var,
            "{} vs {}", art.diagnostics.parseval_etau, var);
    }

    #[test]
    fn conjugation_is_an_isometry_on_mean_free_polynomials(coeffs in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..50)) {
        let f = |t: f64| coeffs.iter().enumerate()
            .map(|(i, (a, b))| a * ((i + 1) as f64 * t).cos() + b * ((i + 1) as f64 * t).sin())
            .sum::<f64>();
        let pf = PeriodicFunction::from_fn(256, f).unwrap();
        let hf = hilbert_spectral(&pf);
        prop_assert!((lp_norm(&pf, 2.0) - lp_norm(&hf, 2.0)).abs() < 1e-12);
        let hhf = hilbert_spectral(&hf);
        for (x, y) in pf.values().iter().zip(hhf.values()) {
            prop_assert!((x + y).abs() < 1e-12);
        }
    }

    #[test]
    fn exits_are_deterministic_and_obey_markov(seed in any::<u64>()) {
        let disk = fixtures::unit_disk();
        let start = Complex64::new(0.2, -0.1);
        let opts = EulerOptions::new(1e-2, 200, seed);
        let a = euler_exit(&disk, start, opts).unwrap();
        let b = euler_exit(&disk, start, opts).unwrap();
        prop_assert_eq!(a.to_csv(), b.to_csv());
        let times = a.exit_times();
        let mean = times.iter().sum::<f64>() / times.len() as f64;
        for t in [0.5, 1.0, 2.0] {
            let tail = times.iter().filter(|x| **x > t).count() as f64 / times.len() as f64;
            prop_assert!(tail <= mean / t);
        }
    }
}

#[test]
fn backends_agree_on_the_disk() {
    let n = 100_000;
    let disk = fixtures::unit_disk();
    let start = Complex64::new(0.3, 0.4);
    let e = euler_exit(&disk, start, EulerOptions::new(1e-3, n, 1).with_bridge(true)).unwrap();
    let w = wos_exit(&disk, start, WosOptions::new(1e-6, n, 2)).unwrap();
    let ks = ks_two_sample(&e.exit_x(), &w.exit_x());
    assert!(ks.statistic < 2.0 * kolmogorov_critical_99(n), "{ks:?}");
}

#[test]
fn harmonic_measure_of_the_disk_from_the_center_is_uniform() {
    let w = wos_exit(&fixtures::unit_disk(), Complex64::new(0.0, 0.0), WosOptions::new(1e-6, 20_000, 3)).unwrap();
    let angles: Vec<f64> = w.boundary_exits().map(|r| r.exit_point.arg()).collect();
    let ks = ks_one_sample(&angles, |t| {
        let c = ((t + PI) / (2.0 * PI)).clamp(0.0, 1.0);
        (c, c)
    });
    assert!(ks.pass, "{ks:?}");
}
