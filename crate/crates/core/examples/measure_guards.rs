//! Measures, their quantile functions, centering, and the moment-order
//! guard.

use conformal_skorohod::measures::{center, Atom, Builtin, Knot, MeasureSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let laws = [
        ("uniform", MeasureSpec::builtin(Builtin::Uniform { a: -1.0, b: 1.0 }, 4.0)?),
        ("gaussian", MeasureSpec::builtin(Builtin::Gaussian { sigma: 1.0 }, 4.0)?),
        ("laplace", MeasureSpec::builtin(Builtin::Laplace { b: 1.0 }, 4.0)?),
        ("arcsine", MeasureSpec::builtin(Builtin::Arcsine { r: 1.0 }, 4.0)?),
    ];
    for (name, spec) in &laws {
        let g = spec.quantile();
        println!(
            "{name:9} var {:.6}  G(0.1) {:+.6}  G(0.9) {:+.6}  unbounded {}",
            spec.moment(2.0)?,
            g.eval(0.1),
            g.eval(0.9),
            g.is_unbounded()
        );
    }

    let skewed = MeasureSpec::discrete(
        vec![Atom { x: 0.0, weight: 0.75 }, Atom { x: 2.0, weight: 0.25 }],
        2.0,
    )?;
    println!("skewed mean {:.3}, hypotheses: {:?}", skewed.mean(), skewed.check_hypotheses().err());
    let centered = center(&skewed)?;
    println!("centered mean {:.1e}, atoms {:?}", centered.mean(), centered.atoms());

    let tab = MeasureSpec::tabulated(
        vec![Knot { x: -1.0, f: 0.0 }, Knot { x: 0.0, f: 0.5 }, Knot { x: 1.0, f: 1.0 }],
        3.0,
    )?;
    println!("tabulated cdf(0.5) = {}", tab.cdf(0.5));

    for p in [1.0, 0.3] {
        let err = MeasureSpec::builtin(Builtin::Uniform { a: -1.0, b: 1.0 }, p).unwrap_err();
        println!("p = {p}: {err}");
    }
    Ok(())
}
