//! Goodness-of-fit and tail statistics for exit samples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Asymptotic 99% quantile of the Kolmogorov distribution.
pub const KOLMOGOROV_99: f64 = 1.6276;

/// Ratio `α̂(k/4) / α̂(k)` above which a tail is treated as lighter than
/// any power law.
pub const POWER_TAIL_RATIO: f64 = 1.2;

pub fn kolmogorov_critical_99(n: usize) -> f64 {
    KOLMOGOROV_99 / (n as f64).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsResult {
    pub statistic: f64,
    pub n: usize,
    pub critical_99: f64,
    pub pass: bool,
}

impl KsResult {
    fn new(statistic: f64, n: usize, critical_99: f64) -> Self {
        KsResult {
            statistic,
            n,
            critical_99,
            pass: statistic < critical_99,
        }
    }
}

/// One-sample Kolmogorov-Smirnov distance. `cdf(x)` returns the pair
/// `(F(x-), F(x))`, so laws with atoms are handled exactly.
pub fn ks_one_sample(sample: &[f64], cdf: impl Fn(f64) -> (f64, f64)) -> KsResult {
    let mut xs = sample.to_vec();
    xs.sort_by(f64::total_cmp);
    let values: Vec<(f64, f64)> = xs.iter().map(|&x| cdf(x)).collect();
    ks_sorted(&xs, &values)
}

/// As [`ks_one_sample`] for an ascending sample with precomputed CDF pairs.
pub fn ks_sorted(xs: &[f64], cdf: &[(f64, f64)]) -> KsResult {
    let n = xs.len();
    let nf = n as f64;
    let mut d = 0.0_f64;
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && xs[j + 1] == xs[i] {
            j += 1;
        }
        let (left, right) = cdf[i];
        d = d.max((i as f64 / nf - left).abs());
        d = d.max(((j + 1) as f64 / nf - right).abs());
        i = j + 1;
    }
    KsResult::new(d, n, kolmogorov_critical_99(n))
}

/// Two-sample distance with the criterion `D < 2·1.63/√n`, `n` the smaller
/// sample size.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> KsResult {
    let mut xa = a.to_vec();
    let mut xb = b.to_vec();
    xa.sort_by(f64::total_cmp);
    xb.sort_by(f64::total_cmp);
    let (na, nb) = (xa.len() as f64, xb.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d = 0.0_f64;
    while i < xa.len() && j < xb.len() {
        let x = xa[i].min(xb[j]);
        while i < xa.len() && xa[i] == x {
            i += 1;
        }
        while j < xb.len() && xb[j] == x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    let n = xa.len().min(xb.len());
    KsResult::new(d, n, 2.0 * kolmogorov_critical_99(n))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n: usize,
}

impl MeanEstimate {
    /// `|mean - target| ≤ 3·se`.
    pub fn within_3se(&self, target: f64) -> bool {
        (self.mean - target).abs() <= 3.0 * self.std_error
    }
}

pub fn mean_se(values: &[f64]) -> MeanEstimate {
    let n = values.len();
    let nf = n as f64;
    let mean = values.iter().sum::<f64>() / nf;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (nf - 1.0).max(1.0);
    MeanEstimate {
        mean,
        std_error: (var / nf).sqrt(),
        n,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BootstrapCi {
    pub estimate: f64,
    pub lower: f64,
    pub upper: f64,
    pub level: f64,
    pub resamples: usize,
}

/// Percentile bootstrap interval for the mean.
pub fn bootstrap_mean(values: &[f64], resamples: usize, level: f64, seed: u64) -> BootstrapCi {
    let n = values.len();
    let estimate = values.iter().sum::<f64>() / n as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut means: Vec<f64> = (0..resamples)
        .map(|_| (0..n).map(|_| values[rng.random_range(0..n)]).sum::<f64>() / n as f64)
        .collect();
    means.sort_by(f64::total_cmp);
    let tail = 0.5 * (1.0 - level);
    let at = |q: f64| means[((q * resamples as f64) as usize).min(resamples - 1)];
    BootstrapCi {
        estimate,
        lower: at(tail),
        upper: at(1.0 - tail),
        level,
        resamples,
    }
}

/// Hill estimate `k / Σ_{i<k} ln(x_(i) / x_(k))` from the `k` largest
/// positive values, `x_(k)` the `(k+1)`-th largest.
pub fn hill(values: &[f64], k: usize) -> Option<f64> {
    let mut xs: Vec<f64> = values.iter().copied().filter(|v| *v > 0.0).collect();
    if k == 0 || xs.len() <= k {
        return None;
    }
    xs.sort_by(|a, b| b.total_cmp(a));
    let threshold = xs[k].ln();
    let s: f64 = xs[..k].iter().map(|x| x.ln() - threshold).sum();
    Some(k as f64 / s)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailEstimate {
    pub k: usize,
    pub alpha: f64,
    pub alpha_quarter_k: f64,
    /// False when the Hill estimate keeps rising deeper in the tail.
    pub power_tail: bool,
}

pub fn tail_estimate(values: &[f64], k: usize) -> Option<TailEstimate> {
    let alpha = hill(values, k)?;
    let alpha_quarter_k = hill(values, (k / 4).max(1))?;
    Some(TailEstimate {
        k,
        alpha,
        alpha_quarter_k,
        power_tail: alpha_quarter_k / alpha < POWER_TAIL_RATIO,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_distr::{Distribution, Exp, Pareto};

    #[test]
    fn ks_uniform_and_shifted() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let xs: Vec<f64> = (0..20_000).map(|_| rng.random::<f64>()).collect();
        let cdf = |x: f64| {
            let f = x.clamp(0.0, 1.0);
            (f, f)
        };
        assert!(ks_one_sample(&xs, cdf).pass);
        let shifted: Vec<f64> = xs.iter().map(|x| x * 0.97).collect();
        assert!(!ks_one_sample(&shifted, cdf).pass);
    }

    #[test]
    fn ks_with_atoms() {
        let xs: Vec<f64> = (0..1000).map(|i| if i % 2 == 0 { -1.0 } else { 1.0 }).collect();
        let cdf = |x: f64| {
            let step = |y: f64, strict: bool| {
                let below = |a: f64| if strict { a < y } else { a <= y };
                0.5 * (below(-1.0) as u8 as f64) + 0.5 * (below(1.0) as u8 as f64)
            };
            (step(x, true), step(x, false))
        };
        let r = ks_one_sample(&xs, cdf);
        assert_eq!(r.statistic, 0.0);
    }

    #[test]
    fn two_sample() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a: Vec<f64> = (0..5000).map(|_| rng.random::<f64>()).collect();
        let b: Vec<f64> = (0..5000).map(|_| rng.random::<f64>()).collect();
        assert!(ks_two_sample(&a, &b).pass);
        assert_eq!(ks_two_sample(&a, &a).statistic, 0.0);
    }

    #[test]
    fn hill_on_pareto_and_exponential() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pareto = Pareto::new(1.0, 1.0).unwrap();
        let xs: Vec<f64> = (0..100_000).map(|_| pareto.sample(&mut rng)).collect();
        let t = tail_estimate(&xs, 1000).unwrap();
        assert!((t.alpha - 1.0).abs() < 0.1, "{t:?}");
        assert!(t.power_tail);
        let exp = Exp::new(1.0).unwrap();
        let ys: Vec<f64> = (0..100_000).map(|_| exp.sample(&mut rng)).collect();
        assert!(!tail_estimate(&ys, 1000).unwrap().power_tail);
        assert!(hill(&ys, 100_000).is_none());
    }

    #[test]
    fn bootstrap_brackets_mean() {
        let v: Vec<f64> = (0..500).map(|i| (i % 7) as f64).collect();
        let ci = bootstrap_mean(&v, 1000, 0.95, 4);
        assert!(ci.lower < ci.estimate && ci.estimate < ci.upper);
        let m = mean_se(&v);
        assert!((ci.upper - ci.lower) / (2.0 * 1.96 * m.std_error) - 1.0 < 0.2);
    }
}
