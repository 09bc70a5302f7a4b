//! The uniqueness conditions on the strip, the cross, the notched square
//! and the parabola.

use conformal_skorohod::geometry::fixtures;
use conformal_skorohod::uniqueness::{check_conditions, MomentOptions};
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let origin = Complex64::new(0.0, 0.0);
    let cases = [
        ("strip", fixtures::vertical_strip(1.0, 8.0), 4.0),
        ("cross", fixtures::cross_domain(300.0), 2.0),
        ("notched square", fixtures::slit_domain(), 4.0),
        ("parabola", fixtures::parabola(100.0, 4001).rotated_quarter(), 2.0),
    ];
    for (name, domain, p) in cases {
        let r = check_conditions(&domain, MomentOptions::new(p, origin, 10_000, 1))?;
        let m = &r.moment_finite_estimate;
        println!(
            "{name:15} symmetric {:5}  delta-convex {:5}  moment p = {p}: {:?} ({})",
            r.symmetric, r.delta_convex, m.verdict, m.basis
        );
    }
    Ok(())
}
