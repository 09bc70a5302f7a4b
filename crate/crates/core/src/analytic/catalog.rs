use std::f64::consts::PI;

use num_complex::Complex64;

use super::{marginalize, pushforward_density, sech, AnalyticError, Density, DomainTag, GraphBranch, Marginal};
use crate::quad::Support;

// Unit disk.

fn poisson(a: Complex64) -> impl Fn(Complex64) -> f64 + Send + Sync + Copy {
    let k = (1.0 - a.norm_sqr()) / (2.0 * PI);
    move |w: Complex64| k / (Complex64::new(1.0, 0.0) - a.conj() * w).norm_sqr()
}

fn check_disk(a: Complex64) -> Result<(), AnalyticError> {
    if a.norm() < 1.0 {
        Ok(())
    } else {
        Err(AnalyticError::StartOutside(a))
    }
}

fn disk_tag(a: Complex64) -> DomainTag {
    if a == Complex64::new(0.0, 0.0) {
        DomainTag::Disk
    } else {
        DomainTag::DiskOffcenter
    }
}

/// Exit density on the unit circle from `a`, in the angle `θ`.
pub fn disk_boundary(a: Complex64) -> Result<Density, AnalyticError> {
    check_disk(a)?;
    let rho = poisson(a);
    Ok(Density::new(
        disk_tag(a),
        Marginal::Boundary,
        Support::Finite { lo: -PI, hi: PI },
        move |t: f64| rho(Complex64::from_polar(1.0, t)),
    ))
}

/// `Re(Z_τ)` on the unit disk from `a`, by marginalizing the Poisson kernel
/// over the branches `y = ±√(1-x²)`.
pub fn disk_x(a: Complex64) -> Result<Density, AnalyticError> {
    check_disk(a)?;
    let f = marginalize(poisson(a), Marginal::X, |x: f64| {
        let r = (1.0 - x * x).sqrt();
        vec![GraphBranch { value: r, slope: -x / r }, GraphBranch { value: -r, slope: x / r }]
    });
    Ok(Density::new(disk_tag(a), Marginal::X, Support::FiniteSqrtEdges { lo: -1.0, hi: 1.0 }, f))
}

/// `Im(Z_τ)` on the unit disk from `a`, over the branches `x = ±√(1-y²)`.
pub fn disk_y(a: Complex64) -> Result<Density, AnalyticError> {
    check_disk(a)?;
    let f = marginalize(poisson(a), Marginal::Y, |y: f64| {
        let r = (1.0 - y * y).sqrt();
        vec![GraphBranch { value: r, slope: -y / r }, GraphBranch { value: -r, slope: y / r }]
    });
    Ok(Density::new(disk_tag(a), Marginal::Y, Support::FiniteSqrtEdges { lo: -1.0, hi: 1.0 }, f))
}

/// Displayed closed form of the `X` marginal from `a`.
pub fn disk_x_closed(a: Complex64, x: f64) -> f64 {
    let r = (1.0 - x * x).sqrt();
    let one = Complex64::new(1.0, 0.0);
    let term = |w: Complex64| 1.0 / (one - a.conj() * w).norm_sqr();
    (1.0 - a.norm_sqr()) / (2.0 * PI * r) * (term(Complex64::new(x, r)) + term(Complex64::new(x, -r)))
}

/// Displayed closed form of the `Y` marginal from `a`.
pub fn disk_y_closed(a: Complex64, y: f64) -> f64 {
    let r = (1.0 - y * y).sqrt();
    let one = Complex64::new(1.0, 0.0);
    let term = |w: Complex64| 1.0 / (one - a.conj() * w).norm_sqr();
    (1.0 - a.norm_sqr()) / (2.0 * PI * r) * (term(Complex64::new(r, y)) + term(Complex64::new(-r, y)))
}

// Strip {|Im z| < 1} from 0.

/// Exit density along one boundary line: each line carries mass ½.
pub fn strip_line_density(x: f64) -> f64 {
    0.25 * sech(0.5 * PI * x)
}

/// `Re(Z_τ)` for the strip `{|Im z| < 1}` from 0, both lines together:
/// `sech(πx/2)/2`.
pub fn strip_x() -> Density {
    Density::new(DomainTag::Strip, Marginal::X, Support::Line { center: 0.0, scale: 1.0 }, |x| {
        0.5 * sech(0.5 * PI * x)
    })
}

/// Exit position along the boundary lines, either line; same law as
/// [`strip_x`].
pub fn strip_boundary() -> Density {
    let mut d = strip_x();
    d.marginal = Marginal::Boundary;
    d
}

// Parabola x = y²/4 - 1 (image of the strip under z²) from 0.

/// Arclength density on the parabola at height `v`, pushed forward from the
/// strip lines through `z ↦ z²`: preimages `±(v/2 + i)` with `|f'| = 2|z|`.
pub fn parabola_arclength() -> impl Fn(f64) -> f64 + Send + Sync + 'static {
    pushforward_density(
        strip_line_density,
        |v: f64| vec![0.5 * v, -0.5 * v],
        |t: f64| 2.0 * t.hypot(1.0),
    )
}

/// `Im(Z_τ)` on the parabola from 0, through the pushforward engine.
pub fn parabola_y() -> Density {
    let rho = parabola_arclength();
    let f = marginalize(move |w: Complex64| rho(w.im), Marginal::Y, |v: f64| {
        vec![GraphBranch { value: 0.25 * v * v - 1.0, slope: 0.5 * v }]
    });
    Density::new(DomainTag::Parabola, Marginal::Y, Support::Line { center: 0.0, scale: 2.0 }, f)
}

/// `Re(Z_τ)` on the parabola from 0, through the pushforward engine.
pub fn parabola_x() -> Density {
    let rho = parabola_arclength();
    let f = marginalize(move |w: Complex64| rho(w.im), Marginal::X, |u: f64| {
        let r = (u + 1.0).sqrt();
        vec![GraphBranch { value: 2.0 * r, slope: 1.0 / r }, GraphBranch { value: -2.0 * r, slope: -1.0 / r }]
    });
    Density::new(DomainTag::Parabola, Marginal::X, Support::HalfLineSqrtEdge { lo: -1.0 }, f)
}

pub fn parabola_y_closed(v: f64) -> f64 {
    0.25 * sech(0.25 * PI * v)
}

pub fn parabola_x_closed(u: f64) -> f64 {
    let r = (u + 1.0).sqrt();
    sech(0.5 * PI * r) / (2.0 * r)
}

// Ellipse x²/cosh²R + y²/sinh²R = 1, the image of {|Im z| < R} under sin.

/// Terms `|m| ≤ n` of `Σ_m sech(π(s + mπ)/(2R))` drop less than `1e-16`
/// relative; returns `n` and the bound on the dropped tail.
fn ellipse_terms(r: f64) -> (i64, f64) {
    let rate = PI * PI / (2.0 * r);
    let n = (37.0 / rate).ceil() as i64 + 1;
    // Each dropped term is below 2e^{-rate(|m| - 1/2)}; geometric sum.
    let tail = 4.0 * (-rate * (n as f64 - 0.5)).exp() / (1.0 - (-rate).exp());
    (n, tail)
}

fn ellipse_series(r: f64, s: f64, n: i64) -> f64 {
    (-n..=n).map(|m| sech(PI * (s + m as f64 * PI) / (2.0 * r))).sum()
}

fn check_r(r: f64) -> Result<(), AnalyticError> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(AnalyticError::InvalidParameter { name: "R", value: r })
    }
}

/// Exit law on the ellipse from 0 in the strip coordinate `x`, where the
/// boundary point is `sin(x + iR)`, `x ∈ [-π/2, 3π/2)`.
pub fn ellipse_boundary(r: f64) -> Result<Density, AnalyticError> {
    check_r(r)?;
    let (n, tail) = ellipse_terms(r);
    Ok(Density::new(
        DomainTag::Ellipse,
        Marginal::Boundary,
        Support::Finite { lo: -0.5 * PI, hi: 1.5 * PI },
        move |x| ellipse_series(r, x, n) / (4.0 * r),
    )
    .with_tail_bound(tail))
}

/// Arclength density at a boundary point `w` of the ellipse.
pub fn ellipse_arclength(r: f64) -> impl Fn(Complex64) -> f64 + Send + Sync + Copy {
    let (n, _) = ellipse_terms(r);
    let (ch, sh) = (r.cosh(), r.sinh());
    move |w: Complex64| {
        let s = (w.re / ch).clamp(-1.0, 1.0).asin();
        // Preimage on the line Im z = ±R; |cos z|² = cosh²R - sin²s.
        let speed = (sh * sh + s.cos().powi(2)).sqrt();
        ellipse_series(r, s, n) / (4.0 * r * speed)
    }
}

/// `Re(Z_τ)` on the ellipse, by marginalizing the arclength density.
pub fn ellipse_x(r: f64) -> Result<Density, AnalyticError> {
    check_r(r)?;
    let (ch, sh) = (r.cosh(), r.sinh());
    let rho = ellipse_arclength(r);
    let f = marginalize(rho, Marginal::X, move |u: f64| {
        let q = (1.0 - (u / ch).powi(2)).sqrt();
        let v = sh * q;
        let slope = -sh * u / (ch * ch * q);
        vec![GraphBranch { value: v, slope }, GraphBranch { value: -v, slope: -slope }]
    });
    Ok(Density::new(DomainTag::Ellipse, Marginal::X, Support::FiniteSqrtEdges { lo: -ch, hi: ch }, f)
        .with_tail_bound(ellipse_terms(r).1))
}

/// `Σ_{m∈ℤ} sech(π(s + mπ)/(2R)) / (2R√(cosh²R - u²))`, `s = arcsin(u/cosh R)`.
pub fn ellipse_x_closed(r: f64, u: f64) -> f64 {
    let (n, _) = ellipse_terms(r);
    let ch = r.cosh();
    let s = (u / ch).asin();
    ellipse_series(r, s, n) / (2.0 * r * (ch * ch - u * u).sqrt())
}

/// The series as usually displayed, with period `2π` shifts and a leading
/// `cosh R`; kept only to show it is not a probability density.
pub fn ellipse_x_displayed(r: f64, u: f64) -> f64 {
    let ch = r.cosh();
    let s = (u / ch).asin();
    let sum: f64 = (-40..=40).map(|n| sech(PI * s / (2.0 * r) + n as f64 * PI * PI / r)).sum();
    ch / (2.0 * r * (ch * ch - u * u).sqrt()) * sum
}

// Right branch of the hyperbola x² - y² = 1 from √δ, the preimage of the
// half-plane Re w > 1 under w = z².

fn check_delta(delta: f64) -> Result<(), AnalyticError> {
    if delta > 1.0 && delta.is_finite() {
        Ok(())
    } else {
        Err(AnalyticError::InvalidParameter { name: "delta", value: delta })
    }
}

/// Cauchy exit law on `Re w = 1` from `δ`, in `v = Im w`.
fn half_plane(delta: f64) -> impl Fn(f64) -> f64 + Send + Sync + Copy {
    let c = delta - 1.0;
    move |v: f64| c / (PI * (c * c + v * v))
}

/// `Im(Z_τ)` through the engine: `y = Im √(1 + iv)`, one preimage
/// `v = 2y√(1+y²)`.
pub fn hyperbola_y(delta: f64) -> Result<Density, AnalyticError> {
    check_delta(delta)?;
    let f = pushforward_density(
        half_plane(delta),
        |y: f64| vec![2.0 * y * y.hypot(1.0)],
        |v: f64| {
            // dy/dv = 1 / (dv/dy), dv/dy = 2(2y²+1)/√(1+y²).
            let y = Complex64::new(1.0, v).sqrt().im;
            y.hypot(1.0) / (2.0 * (2.0 * y * y + 1.0))
        },
    );
    Ok(Density::new(DomainTag::Hyperbola, Marginal::Y, Support::Line { center: 0.0, scale: 1.0 }, f))
}

/// `Re(Z_τ)` through the engine: `x = Re √(1 + iv)`, preimages
/// `v = ±2x√(x²-1)`.
pub fn hyperbola_x(delta: f64) -> Result<Density, AnalyticError> {
    check_delta(delta)?;
    let f = pushforward_density(
        half_plane(delta),
        |x: f64| {
            let v = 2.0 * x * (x * x - 1.0).sqrt();
            vec![v, -v]
        },
        |v: f64| {
            let x = Complex64::new(1.0, v).sqrt().re;
            let q = (x * x - 1.0).sqrt();
            q / (2.0 * (2.0 * x * x - 1.0))
        },
    );
    Ok(Density::new(DomainTag::Hyperbola, Marginal::X, Support::HalfLineSqrtEdge { lo: 1.0 }, f))
}

pub fn hyperbola_y_closed(delta: f64, y: f64) -> f64 {
    let c = delta - 1.0;
    let q = y.hypot(1.0);
    2.0 * c / PI * (2.0 * y * y + 1.0) / (q * (c * c + 4.0 * y * y * q * q))
}

pub fn hyperbola_x_closed(delta: f64, x: f64) -> f64 {
    let c = delta - 1.0;
    let q = (x * x - 1.0).sqrt();
    let term = 1.0 / (c * c + 4.0 * x * x * q * q);
    2.0 * c / PI * (2.0 * x * x - 1.0) / q * (term + term)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_normalized(d: &Density) {
        let z = d.normalization().unwrap();
        assert!((z - 1.0).abs() < 1e-6, "{d:?}: {z}");
    }

    #[test]
    fn disk_examples() {
        let d = disk_boundary(Complex64::new(0.0, 0.0)).unwrap();
        assert!((d.pdf(1.234) - 1.0 / (2.0 * PI)).abs() < 1e-16);
        let d = disk_boundary(Complex64::new(0.5, 0.0)).unwrap();
        assert!((d.pdf(0.0) - 3.0 / (2.0 * PI)).abs() < 1e-15);
        for a in [Complex64::new(0.0, 0.0), Complex64::new(0.5, 0.0), Complex64::new(-0.3, 0.6)] {
            let d = disk_boundary(a).unwrap();
            assert!((d.normalization().unwrap() - 1.0).abs() < 1e-9);
            assert_normalized(&disk_x(a).unwrap());
            assert_normalized(&disk_y(a).unwrap());
        }
        let arcsine = disk_x(Complex64::new(0.0, 0.0)).unwrap();
        for x in [-0.9, 0.0, 0.4] {
            assert!((arcsine.pdf(x) - 1.0 / (PI * (1.0 - x * x).sqrt())).abs() < 1e-14);
        }
        assert!(disk_x(Complex64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn disk_marginals_match_closed_forms_and_swap() {
        let a = Complex64::new(0.3, 0.4);
        let (dx, dy) = (disk_x(a).unwrap(), disk_y(a).unwrap());
        let swapped = disk_x(-a * Complex64::i()).unwrap();
        for i in 1..200 {
            let t = -1.0 + i as f64 / 100.0;
            assert!((dx.pdf(t) - disk_x_closed(a, t)).abs() < 1e-12);
            assert!((dy.pdf(t) - disk_y_closed(a, t)).abs() < 1e-12);
            assert!((dy.pdf(t) - swapped.pdf(t)).abs() < 1e-9);
        }
    }

    #[test]
    fn strip_convention() {
        let d = strip_x();
        assert_eq!(d.pdf(0.0), 0.5);
        assert_eq!(d.pdf(1.3), d.pdf(-1.3));
        assert_normalized(&d);
        assert_eq!(strip_line_density(0.0), 0.25);
    }

    #[test]
    fn parabola_identities() {
        let y = parabola_y();
        let x = parabola_x();
        let rho = parabola_arclength();
        for i in 0..400 {
            let v = -20.0 + i as f64 * 0.1;
            assert!((y.pdf(v) - parabola_y_closed(v)).abs() < 1e-9);
            let displayed = sech(PI * v / 4.0) / (4.0 * (v * v / 4.0 + 1.0).sqrt());
            assert!((rho(v) - displayed).abs() < 1e-15);
        }
        for i in 1..400 {
            let u = -1.0 + i as f64 * 0.05;
            assert!((x.pdf(u) - parabola_x_closed(u)).abs() < 1e-12 * parabola_x_closed(u).max(1.0));
        }
        assert_normalized(&x);
        assert_normalized(&y);
    }

    #[test]
    fn ellipse_series() {
        let b = ellipse_boundary(1.0).unwrap();
        assert_normalized(&b);
        assert!(b.tail_bound < 1e-15);
        let x = ellipse_x(1.0).unwrap();
        assert_normalized(&x);
        for i in 1..100 {
            let u = 1f64.cosh() * (-1.0 + i as f64 / 50.0);
            assert!((x.pdf(u) - ellipse_x_closed(1.0, u)).abs() < 1e-12);
            assert!((x.pdf(u) - x.pdf(-u)).abs() < 1e-12);
        }
        // At the center only m = 0 and the two m = ±1 terms matter.
        let direct = (1.0 + 2.0 * sech(PI * PI / 2.0) + 2.0 * sech(PI * PI)) / (2.0 * 1f64.cosh());
        assert!((ellipse_x_closed(1.0, 0.0) - direct).abs() < 1e-6);
    }

    #[test]
    fn displayed_ellipse_series_is_not_normalized() {
        let ch = 1f64.cosh();
        let s = Support::FiniteSqrtEdges { lo: -ch, hi: ch };
        let z = s.integrate(&|u| ellipse_x_displayed(1.0, u), 1e-10).unwrap();
        assert!((z - 1.0).abs() > 0.1, "{z}");
    }

    #[test]
    fn hyperbola_marginals() {
        for delta in [2.0, 3.5] {
            let (x, y) = (hyperbola_x(delta).unwrap(), hyperbola_y(delta).unwrap());
            assert_normalized(&x);
            assert_normalized(&y);
            assert!((y.pdf(0.0) - 2.0 / (PI * (delta - 1.0))).abs() < 1e-12);
            for i in 0..200 {
                let t = i as f64 * 0.05;
                assert!((y.pdf(t) - hyperbola_y_closed(delta, t)).abs() < 1e-12);
                let s = 1.0 + 0.01 + t;
                assert!((x.pdf(s) - hyperbola_x_closed(delta, s)).abs() < 1e-12);
            }
        }
        assert!(hyperbola_x(1.0).is_err());
    }

    #[test]
    fn curves_tabulate() {
        let c = strip_x().curve(101).unwrap();
        assert_eq!(c.param.len(), 101);
        assert!((c.normalization - 1.0).abs() < 1e-6);
        assert!(c.to_csv().starts_with("param,value\n"));
        assert!(c.values.iter().all(|v| *v >= 0.0));
    }
}
