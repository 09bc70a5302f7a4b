//! Trigonometric transforms on the half-step offset grid
//! `θ_j = -π + π(2j+1)/M`, which never samples `θ = 0` or `θ = ±π`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

/// The `j`-th node of the offset grid of size `m`.
pub fn offset_node(j: usize, m: usize) -> f64 {
    // Integer numerator keeps the grid exactly odd: θ_{M-1-j} = -θ_j.
    ((2 * j + 1) as f64 - m as f64) * PI / m as f64
}

pub fn offset_grid(m: usize) -> Vec<f64> {
    (0..m).map(|j| offset_node(j, m)).collect()
}

/// `(-1)^n e^{-iπn/M}`: phase that moves FFT bins onto the offset grid.
fn grid_phase(n: usize, m: usize) -> Complex64 {
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    Complex64::from_polar(sign, -PI * n as f64 / m as f64)
}

/// Discrete Fourier coefficients of samples on the offset grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigCoefficients {
    /// Grid mean `(1/M) Σ f_j`.
    pub mean: f64,
    /// `a_n = (2/M) Σ f_j cos(nθ_j)` for `n = 1..=n_max`.
    pub cos: Vec<f64>,
    /// `b_n = (2/M) Σ f_j sin(nθ_j)` for `n = 1..=n_max`.
    pub sin: Vec<f64>,
}

/// Trapezoid-rule cosine and sine coefficients up to `n_max < M/2`.
pub fn analyze(values: &[f64], n_max: usize) -> TrigCoefficients {
    let m = values.len();
    assert!(n_max < m / 2 + 1, "n_max must not exceed M/2");
    let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);
    let scale = 2.0 / m as f64;
    let mut cos = Vec::with_capacity(n_max);
    let mut sin = Vec::with_capacity(n_max);
    for (n, x) in buf.iter().enumerate().take(n_max + 1).skip(1) {
        let c = grid_phase(n, m) * x;
        cos.push(scale * c.re);
        sin.push(-scale * c.im);
    }
    TrigCoefficients {
        mean: buf[0].re / m as f64,
        cos,
        sin,
    }
}

/// Evaluates `Σ_{n=1}^{N} a_n cos(nθ_j)` and `Σ a_n sin(nθ_j)` on the offset
/// grid of size `m`, where `a[n-1] = a_n`.
pub fn synthesize(a: &[f64], m: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(a.len() < m, "need more grid points than modes");
    let mut buf = vec![Complex64::new(0.0, 0.0); m];
    for (i, &an) in a.iter().enumerate() {
        let n = i + 1;
        buf[n] = an * grid_phase(n, m).conj();
    }
    FftPlanner::new().plan_fft_inverse(m).process(&mut buf);
    buf.into_iter().map(|c| (c.re, c.im)).unzip()
}

/// Periodic conjugate function of equispaced samples: multiplies mode `n` by
/// `-i·sgn(n)` and drops the mean and Nyquist modes. Independent of the grid
/// phase.
pub fn conjugate(values: &[f64]) -> Vec<f64> {
    let m = values.len();
    let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(m).process(&mut buf);
    let minus_i = Complex64::new(0.0, -1.0);
    buf[0] = Complex64::new(0.0, 0.0);
    for (k, x) in buf.iter_mut().enumerate().skip(1) {
        if 2 * k < m {
            *x *= minus_i;
        } else if 2 * k > m {
            *x *= -minus_i;
        } else {
            *x = Complex64::new(0.0, 0.0);
        }
    }
    planner.plan_fft_inverse(m).process(&mut buf);
    let inv = 1.0 / m as f64;
    buf.into_iter().map(|c| c.re * inv).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analyze_single_modes() {
        let m = 64;
        let grid = offset_grid(m);
        let f: Vec<f64> = grid.iter().map(|t| 3.0 * (2.0 * t).cos() - 0.5 * (5.0 * t).sin() + 0.25).collect();
        let c = analyze(&f, 10);
        assert!((c.mean - 0.25).abs() < 1e-14);
        for n in 1..=10 {
            let ea = if n == 2 { 3.0 } else { 0.0 };
            let eb = if n == 5 { -0.5 } else { 0.0 };
            assert!((c.cos[n - 1] - ea).abs() < 1e-13, "a_{n}");
            assert!((c.sin[n - 1] - eb).abs() < 1e-13, "b_{n}");
        }
    }

    #[test]
    fn synthesis_matches_direct_sums() {
        let m = 128;
        let a = [0.3, -1.0, 0.0, 0.7, 0.01];
        let (c, s) = synthesize(&a, m);
        for (j, t) in offset_grid(m).into_iter().enumerate() {
            let dc: f64 = a.iter().enumerate().map(|(i, x)| x * ((i + 1) as f64 * t).cos()).sum();
            let ds: f64 = a.iter().enumerate().map(|(i, x)| x * ((i + 1) as f64 * t).sin()).sum();
            assert!((c[j] - dc).abs() < 1e-13);
            assert!((s[j] - ds).abs() < 1e-13);
        }
    }

    #[test]
    fn grid_avoids_zero_and_pi() {
        let g = offset_grid(1024);
        assert!(g.iter().all(|t| t.abs() > 1e-4 && (PI - t.abs()) > 1e-4));
        for j in 0..1024 {
            assert_eq!(g[j], -g[1023 - j]);
        }
    }

    #[test]
    fn conjugate_of_cosine_is_sine() {
        let m = 256;
        let h = 2.0 * PI / m as f64;
        let f: Vec<f64> = (0..m).map(|j| (3.0 * (-PI + j as f64 * h)).cos() + 2.0).collect();
        let g = conjugate(&f);
        for (j, v) in g.iter().enumerate() {
            assert!((v - (3.0 * (-PI + j as f64 * h)).sin()).abs() < 1e-13);
        }
    }
}
