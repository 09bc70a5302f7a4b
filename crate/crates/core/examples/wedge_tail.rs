//! Exit-time tail of the quadrant: Hill index from Euler paths and the
//! Hardy number from the aperture.

use conformal_skorohod::geometry::{aperture, fixtures, hardy_number};
use conformal_skorohod::simulate::{euler_exit, tail_index, EulerOptions};
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let quadrant = fixtures::wedge(std::f64::consts::FRAC_PI_2, 1000.0);
    let rep = aperture(&quadrant, &[10.0, 100.0, 900.0])?;
    println!("aperture arcs {:?}", rep.arcs);
    println!("Hardy number  {:.4}", hardy_number(&quadrant, &[900.0])?);

    let start = Complex64::new(1.0, 1.0) / 2f64.sqrt();
    let samples = euler_exit(&quadrant, start, EulerOptions::new(1e-2, 20_000, 11).with_bridge(true))?;
    println!("leakage {:.4}", samples.leakage());
    for k in [200, 500, 2000] {
        let t = tail_index(&samples, k)?;
        println!("k = {k:4}: Hill index {:.3} (k/4: {:.3}) power tail {}", t.alpha, t.alpha_quarter_k, t.power_tail);
    }
    Ok(())
}
