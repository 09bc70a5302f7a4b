//! Synthesize the domain of `½δ₋₁ + ½δ₁` and compare it with the strip
//! `{|Re w| < 1}`.

use conformal_skorohod::construction::{evaluate_map, synthesize, ConstructionConfig};
use conformal_skorohod::geometry::{fixtures, hausdorff};
use conformal_skorohod::measures::{Builtin, MeasureSpec};
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = MeasureSpec::builtin(Builtin::TwoPoint { c: 1.0 }, 4.0)?;
    let art = synthesize(&spec, ConstructionConfig::new(1 << 12, 1 << 14))?;
    let d = &art.diagnostics;
    println!("E[tau] by Parseval   {:.6}", d.parseval_etau);
    println!("symmetric            {}", d.symmetry_ok);
    println!("delta-convex         {}", d.delta_convex_ok);
    println!("simple               {}", d.simple_ok);

    let strip = fixtures::vertical_strip(1.0, 4.0);
    let dist = hausdorff(&art.curve()?, &strip.curve, |p| p.im.abs() <= 2.0);
    println!("Hausdorff to strip   {dist:.2e} on |Im| <= 2");

    for z in [Complex64::new(0.5, 0.0), Complex64::new(0.0, 0.5), Complex64::new(0.3, 0.4)] {
        let v = evaluate_map(&art, z)?;
        println!("f({z}) = {:.6} (tail <= {:.1e})", v.value, v.tail_bound);
    }
    Ok(())
}
