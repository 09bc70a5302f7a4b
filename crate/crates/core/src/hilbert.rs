//! The periodic Hilbert transform
//! `Hf(x) = PV (1/2π) ∫_{-π}^{π} f(x-t) cot(t/2) dt`,
//! computed spectrally and by principal-value quadrature.

use std::f64::consts::PI;

use thiserror::Error;

use crate::transform;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HilbertError {
    #[error("periodic function needs at least 8 samples, got {0}")]
    TooFewSamples(usize),
    #[error("non-finite sample at index {0}")]
    NonFinite(usize),
    #[error("guard band eta_min = {0} outside (0, pi/8]")]
    InvalidGuard(f64),
    #[error("principal value unresolved at theta = {theta}: resolutions disagree by {discrepancy:e}")]
    SingularityUnresolved { theta: f64, discrepancy: f64 },
}

/// Samples on `θ_j = -π + phase + 2πj/M`, `j = 0..M`.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicFunction {
    values: Vec<f64>,
    phase: f64,
}

impl PeriodicFunction {
    pub fn new(values: Vec<f64>, phase: f64) -> Result<Self, HilbertError> {
        if values.len() < 8 {
            return Err(HilbertError::TooFewSamples(values.len()));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(HilbertError::NonFinite(i));
        }
        Ok(PeriodicFunction { values, phase })
    }

    /// Samples `f` on the grid starting at `-π`.
    pub fn from_fn(m: usize, f: impl Fn(f64) -> f64) -> Result<Self, HilbertError> {
        Self::from_fn_with_phase(m, 0.0, f)
    }

    pub fn from_fn_with_phase(
        m: usize,
        phase: f64,
        f: impl Fn(f64) -> f64,
    ) -> Result<Self, HilbertError> {
        let h = 2.0 * PI / m as f64;
        Self::new((0..m).map(|j| f(-PI + phase + j as f64 * h)).collect(), phase)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    pub fn theta(&self, j: usize) -> f64 {
        -PI + self.phase + 2.0 * PI * j as f64 / self.values.len() as f64
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    fn with_values(&self, values: Vec<f64>) -> Self {
        PeriodicFunction {
            values,
            phase: self.phase,
        }
    }
}

/// Mode-wise transform: `cos nθ ↦ sin nθ`, `sin nθ ↦ -cos nθ`, mean and
/// Nyquist modes annihilated.
pub fn hilbert_spectral(f: &PeriodicFunction) -> PeriodicFunction {
    f.with_values(transform::conjugate(&f.values))
}

/// Settings for [`hilbert_pv`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PvOptions {
    /// Half-width of the band around detected jumps where resolution
    /// disagreement is tolerated.
    pub eta_min: f64,
    /// Agreement tolerance; points disagreeing by more than `10·tol` across
    /// resolutions are unresolved.
    pub tol: f64,
}

impl Default for PvOptions {
    fn default() -> Self {
        PvOptions {
            eta_min: PI / 64.0,
            tol: 1e-8,
        }
    }
}

/// Principal-value transform plus the points excused by the jump guard.
#[derive(Debug, Clone, PartialEq)]
pub struct PvTransform {
    pub function: PeriodicFunction,
    /// `guarded[j]`: evaluation point lies within `eta_min` of a jump.
    pub guarded: Vec<bool>,
}

/// Principal value by symmetric-pair trapezoid sums
/// `S_h(x) = Σ_{k=1}^{M/2} [f(x-kh) - f(x+kh)] cot(kh/2) h/(2π)`
/// Richardson-extrapolated over step `h` and `2h`; a second extrapolation
/// from `2h`, `4h` estimates the residual.
pub fn hilbert_pv(f: &PeriodicFunction, opts: PvOptions) -> Result<PvTransform, HilbertError> {
    let all: Vec<usize> = (0..f.len()).collect();
    let (values, guarded) = hilbert_pv_at(f, &all, opts)?;
    Ok(PvTransform {
        function: f.with_values(values),
        guarded,
    })
}

/// [`hilbert_pv`] restricted to the grid indices in `at`.
pub fn hilbert_pv_at(
    f: &PeriodicFunction,
    at: &[usize],
    opts: PvOptions,
) -> Result<(Vec<f64>, Vec<bool>), HilbertError> {
    if !(opts.eta_min > 0.0 && opts.eta_min <= PI / 8.0) {
        return Err(HilbertError::InvalidGuard(opts.eta_min));
    }
    let m = f.len();
    let h = 2.0 * PI / m as f64;
    let v = &f.values;
    let jumps = detect_jumps(v);
    let guard_cells = (opts.eta_min / h).ceil() as usize;
    // cot(kh/2)·h/(2π) for k = 1..=M/2.
    let kernel: Vec<f64> = (0..=m / 2)
        .map(|k| {
            if k == 0 {
                0.0
            } else {
                h / (2.0 * PI * (0.5 * k as f64 * h).tan())
            }
        })
        .collect();
    let sum = |j: usize, stride: usize| -> f64 {
        let mut acc = 0.0;
        let mut k = stride;
        while k <= m / 2 {
            let lo = v[(j + m - k) % m];
            let hi = v[(j + k) % m];
            acc += (lo - hi) * kernel[k];
            k += stride;
        }
        // The kernel already carries step h; coarser sums use stride·h.
        acc * stride as f64
    };
    let mut out = Vec::with_capacity(at.len());
    let mut guarded = Vec::with_capacity(at.len());
    for &j in at {
        let s1 = sum(j, 1);
        let s2 = sum(j, 2);
        let s4 = sum(j, 4);
        let r1 = 2.0 * s1 - s2;
        let r2 = 2.0 * s2 - s4;
        let near_jump = jumps.iter().any(|&c| cyclic_distance(j, c, m) <= guard_cells);
        let discrepancy = (r1 - r2).abs();
        if discrepancy > 10.0 * opts.tol && !near_jump {
            return Err(HilbertError::SingularityUnresolved {
                theta: f.theta(j),
                discrepancy,
            });
        }
        out.push(r1);
        guarded.push(near_jump);
    }
    Ok((out, guarded))
}

/// Cell `c` (between samples `c` and `c+1`) is a jump when its increment
/// dominates both neighbours and is not negligible against the range.
pub fn detect_jumps(v: &[f64]) -> Vec<usize> {
    let m = v.len();
    let (lo, hi) = v
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &x| (l.min(x), h.max(x)));
    let floor = 1e-3 * (hi - lo);
    let d = |c: usize| (v[(c + 1) % m] - v[c]).abs();
    (0..m)
        .filter(|&c| {
            let here = d(c);
            here > floor && here > 4.0 * d((c + m - 1) % m) && here > 4.0 * d((c + 1) % m)
        })
        .collect()
}

pub fn cyclic_distance(j: usize, cell: usize, m: usize) -> usize {
    // Distance from sample j to the nearer end of the jump cell.
    let a = (j + m - cell) % m;
    let b = (cell + 1 + m - j) % m;
    a.min(m - a).min(b.min(m - b))
}

/// `((1/2π) Σ |f_j|^p Δθ)^{1/p}`.
pub fn lp_norm(f: &PeriodicFunction, p: f64) -> f64 {
    assert!(p >= 1.0, "lp_norm needs p >= 1");
    let mean = f.values.iter().map(|v| v.abs().powf(p)).sum::<f64>() / f.len() as f64;
    mean.powf(1.0 / p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectral_examples() {
        let m = 256;
        let f = PeriodicFunction::from_fn(m, |t| (3.0 * t).cos()).unwrap();
        let g = hilbert_spectral(&f);
        for j in 0..m {
            assert!((g.values()[j] - (3.0 * f.theta(j)).sin()).abs() < 1e-13);
        }
        let one = PeriodicFunction::new(vec![1.0; 64], 0.0).unwrap();
        assert!(hilbert_spectral(&one).values().iter().all(|v| v.abs() < 1e-15));
        let f = PeriodicFunction::from_fn(m, |t| t.cos() + (2.0 * t).cos()).unwrap();
        let g = hilbert_spectral(&f);
        for j in 0..m {
            let t = f.theta(j);
            assert!((g.values()[j] - (t.sin() + (2.0 * t).sin())).abs() < 1e-13);
        }
    }

    #[test]
    fn pv_examples() {
        let m = 256;
        // θ = π/2 sits at index 3M/4.
        let f = PeriodicFunction::from_fn(m, f64::cos).unwrap();
        let (v, _) = hilbert_pv_at(&f, &[3 * m / 4], PvOptions::default()).unwrap();
        assert!((v[0] - 1.0).abs() < 1e-6);
        let f = PeriodicFunction::from_fn(m, f64::sin).unwrap();
        let (v, _) = hilbert_pv_at(&f, &[m / 2], PvOptions::default()).unwrap();
        assert!((v[0] + 1.0).abs() < 1e-6);
        let zero = PeriodicFunction::new(vec![0.0; m], 0.0).unwrap();
        let z = hilbert_pv(&zero, PvOptions::default()).unwrap();
        assert!(z.function.values().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn pv_flags_unguarded_jump() {
        let m = 512;
        let f = PeriodicFunction::from_fn_with_phase(m, PI / m as f64, |t| {
            if t.abs() < PI / 2.0 {
                -1.0
            } else {
                1.0
            }
        })
        .unwrap();
        let strict = hilbert_pv(&f, PvOptions::default());
        assert!(matches!(strict, Err(HilbertError::SingularityUnresolved { .. })), "{strict:?}");
        let loose = PvOptions { eta_min: PI / 64.0, tol: 1e-1 };
        let r = hilbert_pv(&f, loose).unwrap();
        assert!(r.guarded.iter().any(|&g| g));
        // Far from the jumps the transform is the known conjugate of the
        // square wave, -(2/π) atanh(sin θ), up to discretization error.
        let j = m / 2 + m / 16;
        let t = f.theta(j);
        assert!(!r.guarded[j]);
        assert!((r.function.values()[j] + 2.0 / PI * t.sin().atanh()).abs() < 1e-2);
    }

    #[test]
    fn norms() {
        let f = PeriodicFunction::from_fn(1024, f64::cos).unwrap();
        assert!((lp_norm(&f, 2.0) - 0.5f64.sqrt()).abs() < 1e-9);
        let c = PeriodicFunction::new(vec![-2.5; 16], 0.0).unwrap();
        assert!((lp_norm(&c, 3.0) - 2.5).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            PeriodicFunction::new(vec![0.0; 4], 0.0),
            Err(HilbertError::TooFewSamples(4))
        ));
        let f = PeriodicFunction::new(vec![0.0; 16], 0.0).unwrap();
        let bad = PvOptions { eta_min: 1.0, tol: 1e-8 };
        assert!(matches!(hilbert_pv(&f, bad), Err(HilbertError::InvalidGuard(_))));
    }
}
