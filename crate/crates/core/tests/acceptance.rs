//! One line per acceptance criterion; exits non-zero if any fails.

use std::f64::consts::{FRAC_PI_2, PI};
use std::process::ExitCode;
use std::time::Instant;

use conformal_skorohod::analytic::{self, sech, Density};
use conformal_skorohod::construction::{synthesize, ConstructionConfig, DomainArtifact};
use conformal_skorohod::geometry::{fixtures, hardy_number, hausdorff, Domain};
use conformal_skorohod::hilbert::{hilbert_pv, hilbert_spectral, lp_norm, PeriodicFunction, PvOptions};
use conformal_skorohod::measures::{Builtin, MeasureSpec};
use conformal_skorohod::simulate::{euler_exit, tail_index, verify_embedding, wos_exit, EulerOptions, VerifyOptions, WosOptions};
use conformal_skorohod::uniqueness::{check_conditions, MomentOptions, Verdict};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Error = Box<dyn std::error::Error + Send + Sync>;
type Outcome = Result<(bool, String), Error>;
type Criterion = (&'static str, fn() -> Outcome);

fn builtin(b: Builtin) -> MeasureSpec {
    MeasureSpec::builtin(b, 4.0).expect("valid builtin")
}

fn two_point_recovery() -> Outcome {
    let spec = builtin(Builtin::TwoPoint { c: 1.0 });
    let art = synthesize(&spec, ConstructionConfig::new(1 << 14, 1 << 16))?;
    let strip = fixtures::vertical_strip(1.0, 4.0);
    let dist = hausdorff(&art.curve()?, &strip.curve, |p| p.im.abs() <= 2.0);
    let etau = art.diagnostics.parseval_etau;
    let (r, _) = verify_embedding(&art, &spec, VerifyOptions::euler(1e-3, 100_000, 2024))?;
    let time_ok = r.exit_time.within_3se(1.0);
    let ok = dist < 0.05 && (0.99..=1.01).contains(&etau) && time_ok && r.ks.pass;
    Ok((
        ok,
        format!(
            "hausdorff {dist:.2e}, parseval {etau:.5}, E[tau] {:.4} +- {:.4}, KS {:.4}/{:.4}",
            r.exit_time.mean, r.exit_time.std_error, r.ks.statistic, r.ks.critical_99
        ),
    ))
}

fn parseval_identity() -> Outcome {
    let spec = builtin(Builtin::Uniform { a: -1.0, b: 1.0 });
    let err = |n: usize| -> Result<f64, Error> {
        let art = synthesize(&spec, ConstructionConfig::new(n, 4 * n))?;
        Ok((art.diagnostics.parseval_etau - 1.0 / 3.0).abs())
    };
    let (e1, e2) = (err(1 << 12)?, err(1 << 13)?);
    Ok((e1 <= 1e-3 && e1 / e2 >= 1.4, format!("error {e1:.2e} at N=4096, {e2:.2e} at N=8192, ratio {:.2}", e1 / e2)))
}

fn hilbert_agreement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut sup, mut iso) = (0.0f64, 0.0f64);
    for degree in [1, 5, 17, 33, 50] {
        let a: Vec<f64> = (0..degree).map(|_| rng.random_range(-1.0..1.0)).collect();
        let b: Vec<f64> = (0..degree).map(|_| rng.random_range(-1.0..1.0)).collect();
        let f = |t: f64| (0..degree).map(|k| a[k] * ((k + 1) as f64 * t).cos() + b[k] * ((k + 1) as f64 * t).sin()).sum::<f64>();
        let pf = PeriodicFunction::from_fn(1024, f)?;
        let spectral = hilbert_spectral(&pf);
        let pv = hilbert_pv(&pf, PvOptions::default())?;
        for (s, p) in spectral.values().iter().zip(pv.function.values()) {
            sup = sup.max((s - p).abs());
        }
        iso = iso.max((lp_norm(&pf, 2.0) - lp_norm(&spectral, 2.0)).abs());
    }
    Ok((sup < 1e-6 && iso < 1e-9, format!("sup |spectral - PV| {sup:.2e}, isometry defect {iso:.2e}")))
}

struct DensityCase {
    name: &'static str,
    density: Density,
    sample: Vec<f64>,
}

fn density_suite() -> Outcome {
    let n = 100_000;
    let origin = Complex64::new(0.0, 0.0);
    let wos = |d: &Domain, start: Complex64, seed: u64| wos_exit(d, start, WosOptions::new(1e-6, n, seed));
    let a = Complex64::new(0.3, 0.4);
    let disk = fixtures::unit_disk();
    let centered = wos(&disk, origin, 1)?;
    let offset = wos(&disk, a, 2)?;
    let strip = wos(&fixtures::horizontal_strip(1.0, 12.0), origin, 3)?;
    let parabola = wos(&fixtures::parabola(150.0, 8001), origin, 4)?;
    let ellipse = wos(&fixtures::ellipse(1.0, 8192), origin, 5)?;
    let hyperbola = wos(&fixtures::hyperbola(100.0, 20001), Complex64::new(2f64.sqrt(), 0.0), 6)?;
    let cases = vec![
        DensityCase { name: "disk X", density: analytic::disk_x(origin)?, sample: centered.exit_x() },
        DensityCase { name: "off-center disk X", density: analytic::disk_x(a)?, sample: offset.exit_x() },
        DensityCase { name: "off-center disk Y", density: analytic::disk_y(a)?, sample: offset.exit_y() },
        DensityCase { name: "off-center disk Y by swap", density: analytic::disk_x(-a * Complex64::i())?, sample: offset.exit_y() },
        DensityCase { name: "strip X", density: analytic::strip_x(), sample: strip.exit_x() },
        DensityCase { name: "parabola X", density: analytic::parabola_x(), sample: parabola.exit_x() },
        DensityCase { name: "parabola Y", density: analytic::parabola_y(), sample: parabola.exit_y() },
        DensityCase { name: "ellipse X", density: analytic::ellipse_x(1.0)?, sample: ellipse.exit_x() },
        DensityCase { name: "hyperbola X", density: analytic::hyperbola_x(2.0)?, sample: hyperbola.exit_x() },
        DensityCase { name: "hyperbola Y", density: analytic::hyperbola_y(2.0)?, sample: hyperbola.exit_y() },
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    for c in &cases {
        let norm = c.density.normalization()?;
        let ks = c.density.ks(&c.sample)?;
        let pass = (norm - 1.0).abs() <= 1e-6 && ks.pass;
        ok &= pass;
        if !pass {
            notes.push(format!("{} (norm {norm:.8}, KS {:.4}/{:.4})", c.name, ks.statistic, ks.critical_99));
        }
    }
    let py = analytic::parabola_y();
    let gap = (-4000..=4000)
        .map(|i| i as f64 * 0.01)
        .map(|v| (py.pdf(v) - sech(PI * v / 4.0) / 4.0).abs())
        .fold(0.0, f64::max);
    ok &= gap < 1e-9;
    let summary = if notes.is_empty() {
        format!("{} densities normalized and KS-consistent; parabola Y identity gap {gap:.1e}", cases.len())
    } else {
        format!("failing: {}; parabola Y identity gap {gap:.1e}", notes.join(", "))
    };
    Ok((ok, summary))
}

fn wedge_exponent() -> Outcome {
    let quadrant = fixtures::wedge(FRAC_PI_2, 1000.0);
    let start = Complex64::new(1.0, 1.0) / 2f64.sqrt();
    let samples = euler_exit(&quadrant, start, EulerOptions::new(1e-2, 100_000, 5).with_bridge(true))?;
    let hill = tail_index(&samples, 1000)?.alpha;
    let hardy = hardy_number(&quadrant, &[900.0])?;
    let ok = (0.8..=1.2).contains(&hill) && (hardy - 1.0).abs() <= 0.02 && samples.check_leakage().is_ok();
    Ok((ok, format!("Hill index {hill:.3} (k=1000), Hardy number {hardy:.4}, leakage {:.1e}", samples.leakage())))
}

fn uniqueness_predicates() -> Outcome {
    let laws = [
        Builtin::Uniform { a: -1.0, b: 1.0 },
        Builtin::TwoPoint { c: 1.0 },
        Builtin::Gaussian { sigma: 1.0 },
        Builtin::Laplace { b: 1.0 },
        Builtin::Arcsine { r: 1.0 },
    ];
    let origin = Complex64::new(0.0, 0.0);
    let mut ok = true;
    for b in laws {
        let art: DomainArtifact = synthesize(&builtin(b), ConstructionConfig::new(1 << 12, 1 << 14))?;
        let d = &art.diagnostics;
        let r = check_conditions(&Domain::bounded(art.curve()?), MomentOptions::new(art.p, origin, 100, 1))?;
        ok &= d.symmetry_ok && d.delta_convex_ok && d.simple_ok && r.all_conditions;
    }
    let cross = check_conditions(&fixtures::cross_domain(300.0), MomentOptions::new(2.0, origin, 10_000, 1))?;
    let cross_ok = cross.symmetric && cross.delta_convex && cross.moment_finite_estimate.verdict == Verdict::InfiniteSuspected;
    let slit = check_conditions(&fixtures::slit_domain(), MomentOptions::new(4.0, origin, 100, 1))?;
    let slit_ok = slit.symmetric && !slit.delta_convex && slit.moment_finite_estimate.verdict == Verdict::Finite;
    ok &= cross_ok && slit_ok;
    Ok((
        ok,
        format!(
            "5 artifacts pass all; cross fails moment only: {cross_ok} ({}); notched square fails delta-convexity only: {slit_ok}",
            cross.moment_finite_estimate.basis
        ),
    ))
}

fn determinism() -> Outcome {
    let spec = builtin(Builtin::Laplace { b: 1.0 });
    let run = || -> Result<(String, String), Error> {
        let art = synthesize(&spec, ConstructionConfig::new(1 << 11, 1 << 13))?;
        let (_, samples) = verify_embedding(&art, &spec, VerifyOptions::euler(1e-3, 5000, 77))?;
        Ok((art.to_json(), samples.to_csv()))
    };
    let (a, b) = (run()?, run()?);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build()?;
    let c = pool.install(run)?;
    Ok((a == b && a == c, "artifact JSON and samples CSV byte-identical across runs and thread counts".into()))
}

fn input_guards() -> Outcome {
    let msg = |p: f64| MeasureSpec::builtin(Builtin::Uniform { a: -1.0, b: 1.0 }, p).err().map(|e| e.to_string());
    let at_one = msg(1.0).unwrap_or_default();
    let below_half = msg(0.3).unwrap_or_default();
    let ok = at_one.contains("p <= 1 is unsupported")
        && at_one.contains("open problem")
        && below_half.contains("p <= 1 is unsupported")
        && below_half.contains("impossibility")
        && msg(1.5).is_none();
    Ok((ok, "p = 1 cites the open problem, p = 0.3 cites impossibility, p = 1.5 accepted".into()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("two-point recovery", two_point_recovery),
        ("Parseval identity", parseval_identity),
        ("Hilbert oracle agreement", hilbert_agreement),
        ("density suite", density_suite),
        ("wedge exponent", wedge_exponent),
        ("uniqueness predicates", uniqueness_predicates),
        ("determinism", determinism),
        ("input guards", input_guards),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (pass, detail) = check().unwrap_or_else(|e| (false, format!("error: {e}")));
        failed += usize::from(!pass);
        println!(
            "criterion {} {name}: {} [{:.1}s] {detail}",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            t.elapsed().as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
