//! Reference domains: disk, strips, wedges, the cross and slit examples,
//! parabola, hyperbola and ellipse.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{BoundaryCurve, ClipWindow, Domain};

fn c(x: f64, y: f64) -> Complex64 {
    Complex64::new(x, y)
}

fn curve(points: Vec<Complex64>) -> BoundaryCurve {
    BoundaryCurve::new(points).expect("fixture polylines are valid")
}

/// Splits every edge of the closed polygon into `k` equal pieces.
pub fn subdivide(corners: &[Complex64], k: usize) -> Vec<Complex64> {
    let n = corners.len();
    let mut out = Vec::with_capacity(n * k);
    for i in 0..n {
        let (a, b) = (corners[i], corners[(i + 1) % n]);
        for j in 0..k {
            out.push(a + (b - a) * (j as f64 / k as f64));
        }
    }
    out
}

pub fn circle(n: usize, center: Complex64, radius: f64) -> BoundaryCurve {
    curve(
        (0..n)
            .map(|k| center + Complex64::from_polar(radius, -PI + 2.0 * PI * k as f64 / n as f64))
            .collect(),
    )
}

/// Unit disk with 8192 vertices.
pub fn unit_disk() -> Domain {
    Domain::bounded(circle(8192, c(0.0, 0.0), 1.0))
}

/// Self-crossing lemniscate.
pub fn figure_eight(n: usize) -> BoundaryCurve {
    curve(
        (0..n)
            .map(|k| {
                let t = 2.0 * PI * (k as f64 + 0.5) / n as f64;
                c(t.sin(), t.sin() * t.cos())
            })
            .collect(),
    )
}

/// `{|Re z| < w}` clipped to `|Im z| < h`.
pub fn vertical_strip(w: f64, h: f64) -> Domain {
    let corners = [c(-w, 2.0 * h), c(-w, -2.0 * h), c(w, -2.0 * h), c(w, 2.0 * h)];
    let window = ClipWindow::new(-2.0 * w, 2.0 * w, -h, h).expect("nonempty");
    Domain::new(curve(subdivide(&corners, 8)), Some(window))
}

/// `{|Im z| < w}` clipped to `|Re z| < half_length`.
pub fn horizontal_strip(w: f64, half_length: f64) -> Domain {
    let l = half_length;
    let corners = [c(-2.0 * l, -w), c(2.0 * l, -w), c(2.0 * l, w), c(-2.0 * l, w)];
    let window = ClipWindow::new(-l, l, -2.0 * w, 2.0 * w).expect("nonempty");
    Domain::new(curve(subdivide(&corners, 8)), Some(window))
}

/// `ℂ \ {|Re z| ≤ 1, |Im z| ≥ 1}` clipped to `[-x, x]²`; the polygon reaches
/// past the window so the frame does the clipping.
pub fn cross_domain(x: f64) -> Domain {
    let l = 2.0 * x;
    let corners = [
        c(l, -l),
        c(l, l),
        c(1.0, l),
        c(1.0, 1.0),
        c(-1.0, 1.0),
        c(-1.0, l),
        c(-l, l),
        c(-l, -l),
        c(-1.0, -l),
        c(-1.0, -1.0),
        c(1.0, -1.0),
        c(1.0, -l),
    ];
    let window = ClipWindow::symmetric(x, x).expect("nonempty");
    Domain::new(curve(subdivide(&corners, 4)), Some(window))
}

/// Symmetric square with two re-entrant notches entering from the left:
/// vertical lines through the notches meet the upper boundary three times.
pub fn slit_domain() -> Domain {
    let upper = [
        c(2.0, 0.0),
        c(2.0, 2.0),
        c(-2.0, 2.0),
        c(-2.0, 1.5),
        c(1.0, 1.5),
        c(1.0, 1.0),
        c(-2.0, 1.0),
    ];
    let mut corners: Vec<Complex64> = upper.to_vec();
    corners.push(c(-2.0, 0.0));
    corners.extend(upper.iter().skip(1).rev().map(|p| p.conj()));
    Domain::bounded(curve(subdivide(&corners, 4)))
}

/// Wedge `{0 < arg z < alpha}` clipped to `[-x, x]²`, for `alpha ≤ π/2`.
pub fn wedge(alpha: f64, x: f64) -> Domain {
    assert!(alpha > 0.0 && alpha <= PI / 2.0, "wedge opening must lie in (0, pi/2]");
    let l = 4.0 * x;
    let corners = [
        c(0.0, 0.0),
        c(l, 0.0),
        Complex64::from_polar(2.0 * l, 0.5 * alpha),
        Complex64::from_polar(l, alpha),
    ];
    let window = ClipWindow::symmetric(x, x).expect("nonempty");
    Domain::new(curve(subdivide(&corners, 8)), Some(window))
}

/// `{Re z > x0}` clipped to `[-w, w]²`.
pub fn half_plane(x0: f64, w: f64) -> Domain {
    let l = 2.0 * w;
    let corners = [c(x0, -l), c(l, -l), c(l, l), c(x0, l)];
    let window = ClipWindow::symmetric(w, w).expect("nonempty");
    Domain::new(curve(subdivide(&corners, 8)), Some(window))
}

/// Interior of the parabola `x = y²/4 - 1` (image of `|Im z| < 1` under
/// `z²`), clipped to `x < x_max`.
pub fn parabola(x_max: f64, n: usize) -> Domain {
    let t_max = (x_max + 20.0).sqrt() + 1.0;
    let pts = (0..n)
        .map(|k| {
            let t = -t_max + 2.0 * t_max * k as f64 / (n - 1) as f64;
            c(t * t - 1.0, 2.0 * t)
        })
        .collect();
    let y_max = 2.0 * (x_max + 1.0).sqrt() + 1.0;
    let window = ClipWindow::new(-2.0, x_max, -y_max, y_max).expect("nonempty");
    Domain::new(curve(pts), Some(window))
}

/// Right region of the hyperbola `x² - y² = 1`, clipped to
/// `[0, x_max] × [-x_max, x_max]`.
pub fn hyperbola(x_max: f64, n: usize) -> Domain {
    let t_max = (1.3 * x_max).acosh();
    let pts = (0..n)
        .map(|k| {
            let t = -t_max + 2.0 * t_max * k as f64 / (n - 1) as f64;
            c(t.cosh(), t.sinh())
        })
        .collect();
    let window = ClipWindow::new(0.0, x_max, -x_max, x_max).expect("nonempty");
    Domain::new(curve(pts), Some(window))
}

/// Ellipse `x²/cosh²R + y²/sinh²R = 1`.
pub fn ellipse(r: f64, n: usize) -> Domain {
    let (a, b) = (r.cosh(), r.sinh());
    Domain::bounded(curve(
        (0..n)
            .map(|k| {
                let t = -PI + 2.0 * PI * k as f64 / n as f64;
                c(a * t.cos(), b * t.sin())
            })
            .collect(),
    ))
}
