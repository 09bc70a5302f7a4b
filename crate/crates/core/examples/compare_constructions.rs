//! Two truncations of the same law give nearby domains; the gap shrinks as
//! the truncation grows.

use conformal_skorohod::construction::{synthesize, ConstructionConfig};
use conformal_skorohod::measures::{Builtin, MeasureSpec};
use conformal_skorohod::uniqueness::compare_artifacts;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = MeasureSpec::builtin(Builtin::Uniform { a: -1.0, b: 1.0 }, 4.0)?;
    let build = |n: usize| synthesize(&spec, ConstructionConfig::new(n, 1 << 15));
    let mut prev: Option<f64> = None;
    for k in 6..=10 {
        let n = 1 << k;
        let d = compare_artifacts(&build(n)?, &build(2 * n)?)?.hausdorff_distance;
        let ratio = prev.map(|p| format!("{:.3}", d / p)).unwrap_or_default();
        println!("N = {n:5} vs {:5}: {d:.3e} {ratio}", 2 * n);
        prev = Some(d);
    }
    Ok(())
}
