//! Bounding-volume hierarchy over the segments of a closed polyline.
//!
//! Leaves hold runs of consecutive segments, so boxes stay tight along
//! smooth boundaries.

use num_complex::Complex64;

const LEAF_SIZE: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aabb {
    pub min: Complex64,
    pub max: Complex64,
}

impl Aabb {
    fn empty() -> Self {
        Aabb {
            min: Complex64::new(f64::INFINITY, f64::INFINITY),
            max: Complex64::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        }
    }

    fn grow(&mut self, p: Complex64) {
        self.min.re = self.min.re.min(p.re);
        self.min.im = self.min.im.min(p.im);
        self.max.re = self.max.re.max(p.re);
        self.max.im = self.max.im.max(p.im);
    }

    pub fn of_segment(a: Complex64, b: Complex64) -> Self {
        let mut bb = Aabb::empty();
        bb.grow(a);
        bb.grow(b);
        bb
    }

    /// Euclidean distance from `p` to the box (0 inside).
    pub fn distance(&self, p: Complex64) -> f64 {
        let dx = (self.min.re - p.re).max(0.0).max(p.re - self.max.re);
        let dy = (self.min.im - p.im).max(0.0).max(p.im - self.max.im);
        dx.hypot(dy)
    }

    pub fn overlaps(&self, other: &Aabb) -> bool {
        self.min.re <= other.max.re
            && other.min.re <= self.max.re
            && self.min.im <= other.max.im
            && other.min.im <= self.max.im
    }
}

#[derive(Debug, Clone)]
enum Node {
    Leaf { bbox: Aabb, start: usize, end: usize },
    Inner { bbox: Aabb, left: usize, right: usize },
}

impl Node {
    fn bbox(&self) -> &Aabb {
        match self {
            Node::Leaf { bbox, .. } | Node::Inner { bbox, .. } => bbox,
        }
    }
}

/// Closest boundary point to a query.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Nearest {
    pub distance: f64,
    pub point: Complex64,
    pub segment: usize,
}

/// First crossing of a query segment with the polyline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hit {
    /// Fraction along the query segment.
    pub s: f64,
    pub point: Complex64,
    pub segment: usize,
}

#[derive(Debug, Clone)]
pub struct SegmentIndex {
    points: Vec<Complex64>,
    nodes: Vec<Node>,
    root: usize,
}

impl SegmentIndex {
    pub fn new(points: Vec<Complex64>) -> Self {
        let n = points.len();
        let mut index = SegmentIndex {
            points,
            nodes: Vec::with_capacity(2 * n / LEAF_SIZE + 2),
            root: 0,
        };
        index.root = index.build(0, n);
        index
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    /// Segment `i` joins vertex `i` to vertex `i+1` (cyclically).
    pub fn segment(&self, i: usize) -> (Complex64, Complex64) {
        let n = self.points.len();
        (self.points[i], self.points[(i + 1) % n])
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn bounds(&self) -> Aabb {
        *self.nodes[self.root].bbox()
    }

    fn build(&mut self, start: usize, end: usize) -> usize {
        let mut bbox = Aabb::empty();
        for i in start..end {
            let (a, b) = self.segment(i);
            bbox.grow(a);
            bbox.grow(b);
        }
        let node = if end - start <= LEAF_SIZE {
            Node::Leaf { bbox, start, end }
        } else {
            let mid = start + (end - start) / 2;
            let left = self.build(start, mid);
            let right = self.build(mid, end);
            Node::Inner { bbox, left, right }
        };
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    pub fn nearest(&self, p: Complex64) -> Nearest {
        let mut best = Nearest {
            distance: f64::INFINITY,
            point: p,
            segment: 0,
        };
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            match &self.nodes[id] {
                Node::Leaf { bbox, start, end } => {
                    if bbox.distance(p) >= best.distance {
                        continue;
                    }
                    for i in *start..*end {
                        let (a, b) = self.segment(i);
                        let q = closest_on_segment(p, a, b);
                        let d = (p - q).norm();
                        if d < best.distance {
                            best = Nearest {
                                distance: d,
                                point: q,
                                segment: i,
                            };
                        }
                    }
                }
                Node::Inner { bbox, left, right } => {
                    if bbox.distance(p) >= best.distance {
                        continue;
                    }
                    let dl = self.nodes[*left].bbox().distance(p);
                    let dr = self.nodes[*right].bbox().distance(p);
                    // Visit the nearer child first.
                    if dl < dr {
                        stack.push(*right);
                        stack.push(*left);
                    } else {
                        stack.push(*left);
                        stack.push(*right);
                    }
                }
            }
        }
        best
    }

    /// Parity of crossings of the rightward horizontal ray from `p`, with the
    /// half-open rule on vertex heights.
    pub fn ray_parity(&self, p: Complex64) -> bool {
        let mut inside = false;
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            let node = &self.nodes[id];
            let bb = node.bbox();
            if p.im < bb.min.im || p.im > bb.max.im || p.re > bb.max.re {
                continue;
            }
            match node {
                Node::Leaf { start, end, .. } => {
                    for i in *start..*end {
                        let (a, b) = self.segment(i);
                        if (a.im > p.im) != (b.im > p.im) {
                            let x = a.re + (p.im - a.im) * (b.re - a.re) / (b.im - a.im);
                            if x > p.re {
                                inside = !inside;
                            }
                        }
                    }
                }
                Node::Inner { left, right, .. } => {
                    stack.push(*left);
                    stack.push(*right);
                }
            }
        }
        inside
    }

    /// Earliest intersection of segment `a→b` with the polyline.
    pub fn first_hit(&self, a: Complex64, b: Complex64) -> Option<Hit> {
        let query = Aabb::of_segment(a, b);
        let mut best: Option<Hit> = None;
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            let node = &self.nodes[id];
            if !node.bbox().overlaps(&query) {
                continue;
            }
            match node {
                Node::Leaf { start, end, .. } => {
                    for i in *start..*end {
                        let (c, d) = self.segment(i);
                        if let Some((s, u)) = segment_intersection(a, b, c, d) {
                            if best.is_none_or(|h| s < h.s) {
                                best = Some(Hit {
                                    s,
                                    point: c + (d - c) * u,
                                    segment: i,
                                });
                            }
                        }
                    }
                }
                Node::Inner { left, right, .. } => {
                    stack.push(*left);
                    stack.push(*right);
                }
            }
        }
        best
    }

    /// Calls `visit(i)` for every segment whose box overlaps `query`.
    pub fn for_each_overlapping(&self, query: &Aabb, mut visit: impl FnMut(usize) -> bool) -> bool {
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            let node = &self.nodes[id];
            if !node.bbox().overlaps(query) {
                continue;
            }
            match node {
                Node::Leaf { start, end, .. } => {
                    for i in *start..*end {
                        let (c, d) = self.segment(i);
                        if Aabb::of_segment(c, d).overlaps(query) && !visit(i) {
                            return false;
                        }
                    }
                }
                Node::Inner { left, right, .. } => {
                    stack.push(*left);
                    stack.push(*right);
                }
            }
        }
        true
    }
}

pub fn closest_on_segment(p: Complex64, a: Complex64, b: Complex64) -> Complex64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return a;
    }
    let t = ((p - a).re * ab.re + (p - a).im * ab.im) / len2;
    a + ab * t.clamp(0.0, 1.0)
}

pub fn cross(u: Complex64, v: Complex64) -> f64 {
    u.re * v.im - u.im * v.re
}

/// Parameters `(s, u)` with `a + s(b-a) = c + u(d-c)`, both in `[0, 1]`;
/// parallel segments report no intersection.
pub fn segment_intersection(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
) -> Option<(f64, f64)> {
    let r = b - a;
    let q = d - c;
    let denom = cross(r, q);
    if denom == 0.0 {
        return None;
    }
    let w = c - a;
    let s = cross(w, q) / denom;
    let u = cross(w, r) / denom;
    if (0.0..=1.0).contains(&s) && (0.0..=1.0).contains(&u) {
        Some((s, u))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn circle(n: usize) -> Vec<Complex64> {
        (0..n)
            .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64))
            .collect()
    }

    #[test]
    fn nearest_matches_brute_force() {
        let idx = SegmentIndex::new(circle(500));
        for &(x, y) in &[(0.0, 0.0), (0.3, -0.2), (2.0, 1.0), (-0.99, 0.0)] {
            let p = Complex64::new(x, y);
            let brute = (0..idx.len())
                .map(|i| {
                    let (a, b) = idx.segment(i);
                    (p - closest_on_segment(p, a, b)).norm()
                })
                .fold(f64::INFINITY, f64::min);
            assert_eq!(idx.nearest(p).distance, brute);
        }
    }

    #[test]
    fn parity_and_hits() {
        let idx = SegmentIndex::new(circle(256));
        assert!(idx.ray_parity(Complex64::new(0.1, 0.2)));
        assert!(!idx.ray_parity(Complex64::new(1.5, 0.0)));
        let hit = idx
            .first_hit(Complex64::new(0.0, 0.0), Complex64::new(2.0, 0.0))
            .unwrap();
        assert!((hit.point.re - 1.0).abs() < 1e-3 && hit.point.im.abs() < 1e-9);
        assert!((hit.s - 0.5).abs() < 1e-3);
        assert!(idx
            .first_hit(Complex64::new(0.0, 0.0), Complex64::new(0.5, 0.5))
            .is_none());
    }
}
