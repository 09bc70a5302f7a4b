//! Adaptive Gauss–Kronrod quadrature plus the variable maps used to tame
//! square-root edge singularities and infinite ranges.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadError {
    #[error("adaptive quadrature did not converge: estimate {estimate}, error {error} after {intervals} intervals")]
    QuadratureFailure {
        estimate: f64,
        error: f64,
        intervals: usize,
    },
    #[error("integrand produced a non-finite value at x = {x}")]
    NonFinite { x: f64 },
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One 15-point Kronrod panel: (integral, error estimate).
pub fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<(f64, f64), QuadError> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    if !fc.is_finite() {
        return Err(QuadError::NonFinite { x: c });
    }
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (i, &x) in XGK.iter().take(7).enumerate() {
        let (xl, xr) = (c - h * x, c + h * x);
        let (fl, fr) = (f(xl), f(xr));
        if !fl.is_finite() {
            return Err(QuadError::NonFinite { x: xl });
        }
        if !fr.is_finite() {
            return Err(QuadError::NonFinite { x: xr });
        }
        kronrod += WGK[i] * (fl + fr);
        if i % 2 == 1 {
            gauss += WG[i / 2] * (fl + fr);
        }
    }
    Ok((kronrod * h, ((kronrod - gauss) * h).abs()))
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Globally adaptive integration of `f` over the finite interval `[a, b]`.
///
/// Bisects the panel with the largest error until the summed error falls
/// below `max(abs_tol, rel_tol * |I|)`.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<f64, QuadError> {
    const MAX_PANELS: usize = 4000;
    if a == b {
        return Ok(0.0);
    }
    // Start from a few panels: a single symmetric panel can report zero
    // error for integrands with mirrored structure about its centre.
    const INITIAL_PANELS: usize = 4;
    let mut heap = BinaryHeap::new();
    let (mut total, mut total_err) = (0.0, 0.0);
    for i in 0..INITIAL_PANELS {
        let lo = a + (b - a) * i as f64 / INITIAL_PANELS as f64;
        let hi = if i + 1 == INITIAL_PANELS {
            b
        } else {
            a + (b - a) * (i + 1) as f64 / INITIAL_PANELS as f64
        };
        let (value, error) = gk15(&f, lo, hi)?;
        total += value;
        total_err += error;
        heap.push(Panel { a: lo, b: hi, value, error });
    }
    while total_err > abs_tol.max(rel_tol * total.abs()) {
        if heap.len() >= MAX_PANELS {
            return Err(QuadError::QuadratureFailure {
                estimate: total,
                error: total_err,
                intervals: heap.len(),
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Panel has collapsed to floating-point resolution.
            return Err(QuadError::QuadratureFailure {
                estimate: total,
                error: total_err,
                intervals: heap.len() + 1,
            });
        }
        let (lv, le) = gk15(&f, worst.a, mid)?;
        let (rv, re) = gk15(&f, mid, worst.b)?;
        total += lv + rv - worst.value;
        total_err += le + re - worst.error;
        heap.push(Panel { a: worst.a, b: mid, value: lv, error: le });
        heap.push(Panel { a: mid, b: worst.b, value: rv, error: re });
    }
    Ok(total)
}

/// Shape of a density's support, which selects the map `s ∈ [0,1] → x`
/// used for every integral over it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Support {
    /// `[lo, hi]` with a smooth integrand.
    Finite { lo: f64, hi: f64 },
    /// `[lo, hi]` with integrable `1/sqrt` blow-ups at both ends.
    FiniteSqrtEdges { lo: f64, hi: f64 },
    /// `[lo, ∞)` with a `1/sqrt` blow-up at `lo`.
    HalfLineSqrtEdge { lo: f64 },
    /// `(-∞, ∞)` centred at `center` with width scale `scale`.
    Line { center: f64, scale: f64 },
}

impl Support {
    pub fn bounds(&self) -> (f64, f64) {
        match *self {
            Support::Finite { lo, hi } | Support::FiniteSqrtEdges { lo, hi } => (lo, hi),
            Support::HalfLineSqrtEdge { lo } => (lo, f64::INFINITY),
            Support::Line { .. } => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    /// Finite range for tabulation: the support itself, or a central
    /// window of an infinite one.
    pub fn display_range(&self) -> (f64, f64) {
        match *self {
            Support::Finite { lo, hi } | Support::FiniteSqrtEdges { lo, hi } => (lo, hi),
            Support::HalfLineSqrtEdge { lo } => (lo, lo + 30.0),
            Support::Line { center, scale } => (center - 12.0 * scale, center + 12.0 * scale),
        }
    }

    /// `x(s)` and `dx/ds`.
    pub fn map(&self, s: f64) -> (f64, f64) {
        use std::f64::consts::PI;
        match *self {
            Support::Finite { lo, hi } => (lo + (hi - lo) * s, hi - lo),
            Support::FiniteSqrtEdges { lo, hi } => {
                let half = 0.5 * (hi - lo);
                (lo + half * (1.0 - (PI * s).cos()), half * PI * (PI * s).sin())
            }
            Support::HalfLineSqrtEdge { lo } => {
                let t = s / (1.0 - s);
                let dt = 1.0 / ((1.0 - s) * (1.0 - s));
                (lo + t * t, 2.0 * t * dt)
            }
            Support::Line { center, scale } => {
                let arg = PI * (s - 0.5);
                let c = arg.cos();
                (center + scale * arg.tan(), scale * PI / (c * c))
            }
        }
    }

    /// Inverse of [`Support::map`], clamped to `[0, 1]`.
    pub fn unmap(&self, x: f64) -> f64 {
        use std::f64::consts::PI;
        let s = match *self {
            Support::Finite { lo, hi } => (x - lo) / (hi - lo),
            Support::FiniteSqrtEdges { lo, hi } => {
                let r = 1.0 - 2.0 * (x - lo) / (hi - lo);
                r.clamp(-1.0, 1.0).acos() / PI
            }
            Support::HalfLineSqrtEdge { lo } => {
                if x <= lo {
                    0.0
                } else if x.is_infinite() {
                    1.0
                } else {
                    let t = (x - lo).sqrt();
                    t / (1.0 + t)
                }
            }
            Support::Line { center, scale } => ((x - center) / scale).atan() / PI + 0.5,
        };
        s.clamp(0.0, 1.0)
    }

    /// Integrand pulled back to `s ∈ [0, 1]`; endpoints where the map is
    /// singular evaluate to zero.
    pub fn pulled_back<'a, F: Fn(f64) -> f64 + 'a>(&'a self, f: &'a F) -> impl Fn(f64) -> f64 + 'a {
        move |s: f64| {
            if s <= 0.0 || s >= 1.0 {
                return 0.0;
            }
            let (x, dx) = self.map(s);
            if !x.is_finite() || !dx.is_finite() {
                return 0.0;
            }
            let v = f(x) * dx;
            if v.is_finite() {
                v
            } else {
                0.0
            }
        }
    }

    /// `∫ f` over the whole support.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: &F, tol: f64) -> Result<f64, QuadError> {
        let g = self.pulled_back(f);
        integrate(g, 0.0, 1.0, tol, tol)
    }

    /// `∫_{lo}^{x_i} f` for every point of an ascending slice, accumulated
    /// piecewise between consecutive points.
    pub fn cumulative<F: Fn(f64) -> f64>(
        &self,
        f: &F,
        sorted: &[f64],
        tol: f64,
    ) -> Result<Vec<f64>, QuadError> {
        let g = self.pulled_back(f);
        let mut out = Vec::with_capacity(sorted.len());
        let mut s_prev = 0.0;
        let mut acc = 0.0;
        for &x in sorted {
            let s = self.unmap(x).max(s_prev);
            if s > s_prev {
                acc += integrate(&g, s_prev, s, tol, tol)?;
                s_prev = s;
            }
            out.push(acc);
        }
        Ok(out)
    }
}
