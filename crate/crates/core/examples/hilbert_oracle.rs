//! Spectral conjugate function against the principal-value quadrature on a
//! trigonometric polynomial.

use conformal_skorohod::hilbert::{hilbert_pv, hilbert_spectral, lp_norm, PeriodicFunction, PvOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = |t: f64| (1..=50).map(|n| ((n * n) as f64).sin() / n as f64 * (n as f64 * t).cos()).sum::<f64>();
    let g = |t: f64| (1..=50).map(|n| ((n * n) as f64).sin() / n as f64 * (n as f64 * t).sin()).sum::<f64>();
    let pf = PeriodicFunction::from_fn(1024, f)?;

    let spectral = hilbert_spectral(&pf);
    let pv = hilbert_pv(&pf, PvOptions::default())?;
    let mut sup_exact = 0.0f64;
    let mut sup_pv = 0.0f64;
    for (j, (s, p)) in spectral.values().iter().zip(pv.function.values()).enumerate() {
        sup_exact = sup_exact.max((s - g(pf.theta(j))).abs());
        sup_pv = sup_pv.max((s - p).abs());
    }
    println!("sup |spectral - exact| = {sup_exact:.2e}");
    println!("sup |spectral - PV|    = {sup_pv:.2e}");
    println!("||f||_2 = {:.12}, ||Hf||_2 = {:.12}", lp_norm(&pf, 2.0), lp_norm(&spectral, 2.0));
    Ok(())
}
