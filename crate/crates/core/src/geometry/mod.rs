//! Closed boundary polylines, clip windows and the geometric predicates used
//! to certify synthesized domains: symmetry, Δ-convexity, simplicity,
//! membership, aperture at infinity and the Hardy number.

mod bvh;
pub mod fixtures;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use bvh::{closest_on_segment, cross, segment_intersection, Aabb, Hit, Nearest, SegmentIndex};

/// Points closer than this to the boundary are outside.
pub const BOUNDARY_EPS: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("boundary needs at least 16 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertices {0} and {1} coincide")]
    RepeatedVertex(usize, usize),
    #[error("non-finite vertex at index {0}")]
    NonFinite(usize),
    #[error("curve is not symmetric about the real axis (tolerance {tol})")]
    NotSymmetric { tol: f64 },
    #[error("domain is not starlike about 0: ray at angle {angle} meets it in {runs} pieces")]
    NotStarlike { angle: f64, runs: usize },
    #[error("clip window is empty: {0:?}")]
    EmptyWindow(ClipWindow),
    #[error("no radii supplied")]
    NoRadii,
    #[error("curve file: {0}")]
    Io(String),
}

/// Closed polyline; the last vertex joins the first.
#[derive(Debug, Clone)]
pub struct BoundaryCurve {
    index: SegmentIndex,
    support_unbounded: bool,
}

impl BoundaryCurve {
    pub fn new(points: Vec<Complex64>) -> Result<Self, GeometryError> {
        let n = points.len();
        if n < 16 {
            return Err(GeometryError::TooFewVertices(n));
        }
        if let Some(i) = points.iter().position(|p| !(p.re.is_finite() && p.im.is_finite())) {
            return Err(GeometryError::NonFinite(i));
        }
        for i in 0..n {
            if points[i] == points[(i + 1) % n] {
                return Err(GeometryError::RepeatedVertex(i, (i + 1) % n));
            }
        }
        Ok(BoundaryCurve {
            index: SegmentIndex::new(points),
            support_unbounded: false,
        })
    }

    pub fn with_unbounded_support(mut self, flag: bool) -> Self {
        self.support_unbounded = flag;
        self
    }

    pub fn support_unbounded(&self) -> bool {
        self.support_unbounded
    }

    pub fn points(&self) -> &[Complex64] {
        self.index.points()
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn index(&self) -> &SegmentIndex {
        &self.index
    }

    pub fn segment(&self, i: usize) -> (Complex64, Complex64) {
        self.index.segment(i)
    }

    pub fn nearest(&self, p: Complex64) -> Nearest {
        self.index.nearest(p)
    }

    pub fn distance(&self, p: Complex64) -> f64 {
        self.index.nearest(p).distance
    }

    /// Even-odd membership; points within [`BOUNDARY_EPS`] of a segment are
    /// outside.
    pub fn contains(&self, p: Complex64) -> bool {
        self.index.ray_parity(p) && self.distance(p) > BOUNDARY_EPS
    }

    pub fn bounds(&self) -> Aabb {
        self.index.bounds()
    }

    /// Reads `x,y` lines; a header line is skipped if it does not parse.
    pub fn from_csv(text: &str) -> Result<Self, GeometryError> {
        let mut pts = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split(',').map(str::trim);
            let parsed = match (fields.next(), fields.next()) {
                (Some(x), Some(y)) => x.parse::<f64>().ok().zip(y.parse::<f64>().ok()),
                _ => None,
            };
            match parsed {
                Some((x, y)) => pts.push(Complex64::new(x, y)),
                None if lineno == 0 => continue,
                None => return Err(GeometryError::Io(format!("line {}: expected x,y", lineno + 1))),
            }
        }
        Self::new(pts)
    }
}

/// Axis-aligned window; clipped domains are the curve's interior intersected
/// with the open window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClipWindow {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl ClipWindow {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Result<Self, GeometryError> {
        let w = ClipWindow {
            x_min,
            x_max,
            y_min,
            y_max,
        };
        if x_min < x_max && y_min < y_max {
            Ok(w)
        } else {
            Err(GeometryError::EmptyWindow(w))
        }
    }

    /// `[-x, x] × [-y, y]`.
    pub fn symmetric(x: f64, y: f64) -> Result<Self, GeometryError> {
        Self::new(-x, x, -y, y)
    }

    pub fn contains_interior(&self, p: Complex64) -> bool {
        p.re > self.x_min && p.re < self.x_max && p.im > self.y_min && p.im < self.y_max
    }

    /// Distance from an interior point to the frame.
    pub fn inner_distance(&self, p: Complex64) -> f64 {
        (p.re - self.x_min)
            .min(self.x_max - p.re)
            .min(p.im - self.y_min)
            .min(self.y_max - p.im)
    }

    pub fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.x_min, self.y_min),
            Complex64::new(self.x_max, self.y_min),
            Complex64::new(self.x_max, self.y_max),
            Complex64::new(self.x_min, self.y_max),
        ]
    }

    /// Fraction along `a→b` where the segment leaves the window, if it does.
    pub fn exit_fraction(&self, a: Complex64, b: Complex64) -> Option<f64> {
        if self.contains_interior(b) {
            return None;
        }
        let d = b - a;
        let mut s: f64 = 1.0;
        if d.re > 0.0 {
            s = s.min((self.x_max - a.re) / d.re);
        } else if d.re < 0.0 {
            s = s.min((self.x_min - a.re) / d.re);
        }
        if d.im > 0.0 {
            s = s.min((self.y_max - a.im) / d.im);
        } else if d.im < 0.0 {
            s = s.min((self.y_min - a.im) / d.im);
        }
        Some(s.clamp(0.0, 1.0))
    }
}

/// Where a step left the domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exit {
    pub s: f64,
    pub point: Complex64,
    /// Left through the clip frame rather than the curve.
    pub frame: bool,
}

/// A boundary curve, optionally clipped.
#[derive(Debug, Clone)]
pub struct Domain {
    pub curve: BoundaryCurve,
    pub window: Option<ClipWindow>,
}

impl Domain {
    pub fn new(curve: BoundaryCurve, window: Option<ClipWindow>) -> Self {
        Domain { curve, window }
    }

    pub fn bounded(curve: BoundaryCurve) -> Self {
        Domain { curve, window: None }
    }

    pub fn contains(&self, p: Complex64) -> bool {
        self.window.is_none_or(|w| w.contains_interior(p)) && self.curve.contains(p)
    }

    /// Distance to the boundary of the (clipped) domain, valid for interior
    /// points.
    pub fn distance(&self, p: Complex64) -> f64 {
        let d = self.curve.distance(p);
        match self.window {
            Some(w) => d.min(w.inner_distance(p)),
            None => d,
        }
    }

    /// Nearest boundary point and whether it lies on the frame.
    pub fn nearest(&self, p: Complex64) -> (f64, Complex64, bool) {
        let n = self.curve.nearest(p);
        if let Some(w) = self.window {
            let dw = w.inner_distance(p);
            if dw < n.distance {
                let q = if dw == p.re - w.x_min {
                    Complex64::new(w.x_min, p.im)
                } else if dw == w.x_max - p.re {
                    Complex64::new(w.x_max, p.im)
                } else if dw == p.im - w.y_min {
                    Complex64::new(p.re, w.y_min)
                } else {
                    Complex64::new(p.re, w.y_max)
                };
                return (dw, q, true);
            }
        }
        (n.distance, n.point, false)
    }

    /// Image under `z ↦ -iz`, which turns `Im` into `Re`.
    pub fn rotated_quarter(&self) -> Domain {
        let turn = |p: Complex64| Complex64::new(p.im, -p.re);
        let pts = self.curve.points().iter().map(|&p| turn(p)).collect();
        let curve = BoundaryCurve::new(pts)
            .expect("rotation keeps vertices distinct")
            .with_unbounded_support(self.curve.support_unbounded());
        let window = self.window.map(|w| ClipWindow {
            x_min: w.y_min,
            x_max: w.y_max,
            y_min: -w.x_max,
            y_max: -w.x_min,
        });
        Domain { curve, window }
    }

    /// Same curve with the window scaled about the origin.
    pub fn with_window_scaled(&self, factor: f64) -> Domain {
        Domain {
            curve: self.curve.clone(),
            window: self.window.map(|w| ClipWindow {
                x_min: w.x_min * factor,
                x_max: w.x_max * factor,
                y_min: w.y_min * factor,
                y_max: w.y_max * factor,
            }),
        }
    }

    /// First boundary crossing along `a→b` for `a` inside.
    pub fn first_exit(&self, a: Complex64, b: Complex64) -> Option<Exit> {
        let curve_hit = self.curve.index().first_hit(a, b).map(|h| Exit {
            s: h.s,
            point: h.point,
            frame: false,
        });
        let frame_hit = self.window.and_then(|w| {
            w.exit_fraction(a, b).map(|s| Exit {
                s,
                point: a + (b - a) * s,
                frame: true,
            })
        });
        match (curve_hit, frame_hit) {
            (Some(c), Some(f)) => Some(if f.s < c.s { f } else { c }),
            (c, f) => c.or(f),
        }
    }
}

/// Reflection `(x, y) ↦ (x, -y)` of every vertex lies within `tol` of the
/// polyline (vertex-to-polyline Hausdorff distance).
pub fn is_symmetric(curve: &BoundaryCurve, tol: f64) -> bool {
    symmetry_defect(curve) <= tol
}

/// Largest distance from a reflected vertex to the polyline.
pub fn symmetry_defect(curve: &BoundaryCurve) -> f64 {
    curve
        .points()
        .iter()
        .map(|p| curve.distance(p.conj()))
        .fold(0.0, f64::max)
}

/// Vertical-line test on the upper boundary: the arc above the real axis is
/// a single run whose abscissa is monotone.
pub fn is_delta_convex(curve: &BoundaryCurve, tol: f64) -> Result<bool, GeometryError> {
    if !is_symmetric(curve, tol) {
        return Err(GeometryError::NotSymmetric { tol });
    }
    let pts = curve.points();
    let n = pts.len();
    let upper: Vec<bool> = pts.iter().map(|p| p.im > tol).collect();
    let starts: Vec<usize> = (0..n).filter(|&i| upper[i] && !upper[(i + n - 1) % n]).collect();
    if starts.len() != 1 {
        return Ok(false);
    }
    let start = starts[0];
    // Arc: the run of upper vertices plus the axis-side neighbours.
    let mut xs = vec![pts[(start + n - 1) % n].re];
    let mut i = start;
    while upper[i] {
        xs.push(pts[i].re);
        i = (i + 1) % n;
        if i == start {
            // No vertex below the axis: not a closed symmetric curve.
            return Ok(false);
        }
    }
    xs.push(pts[i].re);
    let rising = xs.windows(2).all(|w| w[1] >= w[0] - tol);
    let falling = xs.windows(2).all(|w| w[1] <= w[0] + tol);
    Ok(rising || falling)
}

fn orient(a: Complex64, b: Complex64, c: Complex64) -> f64 {
    let u = b - a;
    let v = c - a;
    let o = cross(u, v);
    if o.abs() <= 1e-14 * u.norm() * v.norm() {
        0.0
    } else {
        o
    }
}

fn on_segment(p: Complex64, a: Complex64, b: Complex64) -> bool {
    p.re >= a.re.min(b.re)
        && p.re <= a.re.max(b.re)
        && p.im >= a.im.min(b.im)
        && p.im <= a.im.max(b.im)
}

/// Closed-segment intersection test, touching and collinear overlap included.
pub fn segments_touch(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 * o2 < 0.0 && o3 * o4 < 0.0 {
        return true;
    }
    (o1 == 0.0 && on_segment(c, a, b))
        || (o2 == 0.0 && on_segment(d, a, b))
        || (o3 == 0.0 && on_segment(a, c, d))
        || (o4 == 0.0 && on_segment(b, c, d))
}

/// No two non-adjacent segments meet and no adjacent pair folds back on
/// itself. Candidate pairs come from the segment hierarchy.
pub fn is_simple(curve: &BoundaryCurve) -> bool {
    first_self_intersection(curve).is_none()
}

/// A pair of offending segments, if any.
pub fn first_self_intersection(curve: &BoundaryCurve) -> Option<(usize, usize)> {
    let n = curve.len();
    let index = curve.index();
    for i in 0..n {
        let (a, b) = index.segment(i);
        let next = (i + 1) % n;
        let (_, c) = index.segment(next);
        // Adjacent fold-back: collinear with reversed direction.
        let (u, v) = (b - a, c - b);
        if orient(a, b, c) == 0.0 && u.re * v.re + u.im * v.im < 0.0 {
            return Some((i, next));
        }
        let mut found = None;
        index.for_each_overlapping(&Aabb::of_segment(a, b), |j| {
            if j <= i || j == next || (i == 0 && j == n - 1) {
                return true;
            }
            let (c, d) = index.segment(j);
            if segments_touch(a, b, c, d) {
                found = Some((i, j));
                false
            } else {
                true
            }
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Angles in `(-π, π]` where the circle `|z| = r` meets segment `a→b`.
fn circle_segment_angles(r: f64, a: Complex64, b: Complex64, out: &mut Vec<f64>) {
    let d = b - a;
    let qa = d.norm_sqr();
    let qb = 2.0 * (a.re * d.re + a.im * d.im);
    let qc = a.norm_sqr() - r * r;
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 || qa == 0.0 {
        return;
    }
    let sq = disc.sqrt();
    for t in [(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)] {
        if (0.0..=1.0).contains(&t) {
            out.push((a + d * t).arg());
        }
    }
}

/// Parameter `ρ ≥ 0` where the ray `ρ·dir` meets segment `a→b`.
fn ray_segment_hit(dir: Complex64, a: Complex64, b: Complex64) -> Option<f64> {
    let d = b - a;
    let denom = cross(dir, d);
    if denom == 0.0 {
        return None;
    }
    let rho = cross(a, d) / denom;
    let u = cross(a, dir) / denom;
    (rho >= 0.0 && (0.0..=1.0).contains(&u)).then_some(rho)
}

/// Number of separate pieces in which the ray at angle `phi` meets the
/// domain.
fn ray_runs(domain: &Domain, phi: f64) -> usize {
    let dir = Complex64::from_polar(1.0, phi);
    let mut hits: Vec<f64> = Vec::new();
    let n = domain.curve.len();
    for i in 0..n {
        let (a, b) = domain.curve.segment(i);
        if let Some(rho) = ray_segment_hit(dir, a, b) {
            hits.push(rho);
        }
    }
    if let Some(w) = domain.window {
        let c = w.corners();
        for k in 0..4 {
            if let Some(rho) = ray_segment_hit(dir, c[k], c[(k + 1) % 4]) {
                hits.push(rho);
            }
        }
    }
    hits.push(0.0);
    hits.sort_by(f64::total_cmp);
    hits.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs().max(1.0));
    let mut runs = 0;
    let mut prev_inside = false;
    for k in 0..hits.len() {
        let probe = if k + 1 < hits.len() {
            0.5 * (hits[k] + hits[k + 1])
        } else {
            hits[k] * 2.0 + 1.0
        };
        let inside = domain.contains(dir * probe);
        if inside && !prev_inside {
            runs += 1;
        }
        prev_inside = inside;
    }
    runs
}

/// Numerical starlikeness about 0: every probed ray meets the domain in at
/// most one interval.
pub fn check_starlike(domain: &Domain, n_rays: usize) -> Result<(), GeometryError> {
    for k in 0..n_rays {
        let phi = -PI + 2.0 * PI * (k as f64 + 0.5) / n_rays as f64;
        let runs = ray_runs(domain, phi);
        if runs > 1 {
            return Err(GeometryError::NotStarlike { angle: phi, runs });
        }
    }
    Ok(())
}

/// Largest connected arc of `{|z| = r}` inside the domain, per radius.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApertureReport {
    pub radii: Vec<f64>,
    pub arcs: Vec<f64>,
    /// Arc at the largest radius.
    pub estimate: f64,
}

impl ApertureReport {
    pub fn is_non_increasing(&self, tol: f64) -> bool {
        self.arcs.windows(2).all(|w| w[1] <= w[0] + tol)
    }
}

/// Maximal angular measure of a connected subarc of `Ω ∩ {|z| = r}`.
pub fn max_arc(domain: &Domain, r: f64) -> f64 {
    let mut angles = Vec::new();
    for i in 0..domain.curve.len() {
        let (a, b) = domain.curve.segment(i);
        circle_segment_angles(r, a, b, &mut angles);
    }
    if let Some(w) = domain.window {
        let c = w.corners();
        for k in 0..4 {
            circle_segment_angles(r, c[k], c[(k + 1) % 4], &mut angles);
        }
    }
    if angles.is_empty() {
        let probe = Complex64::new(r, 0.0);
        return if domain.contains(probe) { 2.0 * PI } else { 0.0 };
    }
    angles.sort_by(f64::total_cmp);
    angles.dedup_by(|a, b| (*a - *b).abs() <= 1e-14);
    let k = angles.len();
    // Arc j runs from angles[j] to angles[j+1] (cyclically).
    let arcs: Vec<(f64, bool)> = (0..k)
        .map(|j| {
            let lo = angles[j];
            let hi = if j + 1 < k { angles[j + 1] } else { angles[0] + 2.0 * PI };
            let mid = 0.5 * (lo + hi);
            (hi - lo, domain.contains(Complex64::from_polar(r, mid)))
        })
        .collect();
    if arcs.iter().all(|a| a.1) {
        return 2.0 * PI;
    }
    // Start just after an outside arc so runs do not wrap.
    let first_out = arcs.iter().position(|a| !a.1).expect("some arc is outside");
    let (mut best, mut run) = (0.0_f64, 0.0);
    for j in 1..=k {
        let (len, inside) = arcs[(first_out + j) % k];
        if inside {
            run += len;
            best = best.max(run);
        } else {
            run = 0.0;
        }
    }
    best
}

pub fn aperture(domain: &Domain, radii: &[f64]) -> Result<ApertureReport, GeometryError> {
    if radii.is_empty() {
        return Err(GeometryError::NoRadii);
    }
    check_starlike(domain, 720)?;
    let arcs: Vec<f64> = radii.iter().map(|&r| max_arc(domain, r)).collect();
    Ok(ApertureReport {
        radii: radii.to_vec(),
        estimate: *arcs.last().expect("radii nonempty"),
        arcs,
    })
}

/// `π / (2𝒜)`; infinite when the aperture vanishes (bounded domains).
pub fn hardy_number(domain: &Domain, radii: &[f64]) -> Result<f64, GeometryError> {
    let report = aperture(domain, radii)?;
    Ok(PI / (2.0 * report.estimate))
}

/// Symmetric Hausdorff distance between two vertex sets measured against
/// the other polyline, restricted to vertices passing `keep`.
pub fn hausdorff(
    a: &BoundaryCurve,
    b: &BoundaryCurve,
    keep: impl Fn(Complex64) -> bool,
) -> f64 {
    let one_way = |from: &BoundaryCurve, to: &BoundaryCurve| {
        from.points()
            .iter()
            .filter(|&&p| keep(p))
            .map(|&p| to.distance(p))
            .fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}

/// Winding number of the polyline about `p`, by summed signed angles.
pub fn winding_number(curve: &BoundaryCurve, p: Complex64) -> i64 {
    let pts = curve.points();
    let n = pts.len();
    let total: f64 = (0..n)
        .map(|i| ((pts[(i + 1) % n] - p) / (pts[i] - p)).arg())
        .sum();
    (total / (2.0 * PI)).round() as i64
}
