//! Closed-form exit densities: normalizations and the parabola/strip
//! identity.

use conformal_skorohod::analytic::{self, parabola_y, sech, Density};
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = Complex64::new(0.3, 0.4);
    let catalog: Vec<(&str, Density)> = vec![
        ("disk boundary, a = 0", analytic::disk_boundary(Complex64::new(0.0, 0.0))?),
        ("disk X, a = 0", analytic::disk_x(Complex64::new(0.0, 0.0))?),
        ("disk X, a = 0.3+0.4i", analytic::disk_x(a)?),
        ("disk Y, a = 0.3+0.4i", analytic::disk_y(a)?),
        ("strip X", analytic::strip_x()),
        ("parabola X", analytic::parabola_x()),
        ("parabola Y", analytic::parabola_y()),
        ("ellipse X, R = 1", analytic::ellipse_x(1.0)?),
        ("hyperbola X, delta = 2", analytic::hyperbola_x(2.0)?),
        ("hyperbola Y, delta = 2", analytic::hyperbola_y(2.0)?),
    ];
    for (name, d) in &catalog {
        println!("{name:24} integral {:.10}", d.normalization()?);
    }

    let y = parabola_y();
    let gap = (-400..=400)
        .map(|i| i as f64 * 0.05)
        .map(|v| (y.pdf(v) - sech(std::f64::consts::PI * v / 4.0) / 4.0).abs())
        .fold(0.0, f64::max);
    println!("parabola Y vs sech(pi v/4)/4: sup gap {gap:.1e}");
    Ok(())
}
