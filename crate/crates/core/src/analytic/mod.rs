//! Closed-form exit densities and the change-of-variables engine that
//! transports them between domains.
//!
//! A [`Density`] is a function on a one-dimensional parameter together with
//! the [`Support`] that drives every integral of it. Boundary densities are
//! per unit arclength; marginals are per unit coordinate.

mod catalog;

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quad::{QuadError, Support};
use crate::stats::{ks_sorted, KsResult};

pub use catalog::*;

/// Quadrature tolerance for normalization and CDFs.
pub const DENSITY_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalyticError {
    #[error("starting point {0} is not inside the domain")]
    StartOutside(Complex64),
    #[error("parameter {name} = {value} is out of range")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("unknown density {0}")]
    Unknown(String),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainTag {
    Disk,
    DiskOffcenter,
    Strip,
    Parabola,
    Ellipse,
    Hyperbola,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Marginal {
    Boundary,
    X,
    Y,
}

type Pdf = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub struct Density {
    pub domain: DomainTag,
    pub marginal: Marginal,
    pub support: Support,
    /// Bound on the dropped tail of a series density, else 0.
    pub tail_bound: f64,
    pdf: Pdf,
}

impl std::fmt::Debug for Density {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Density")
            .field("domain", &self.domain)
            .field("marginal", &self.marginal)
            .field("support", &self.support)
            .field("tail_bound", &self.tail_bound)
            .finish()
    }
}

impl Density {
    pub fn new(
        domain: DomainTag,
        marginal: Marginal,
        support: Support,
        pdf: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Density {
            domain,
            marginal,
            support,
            tail_bound: 0.0,
            pdf: Arc::new(pdf),
        }
    }

    pub fn with_tail_bound(mut self, bound: f64) -> Self {
        self.tail_bound = bound;
        self
    }

    /// Density at `x`; zero off the support, NaN where singular.
    pub fn pdf(&self, x: f64) -> f64 {
        let (lo, hi) = self.support.bounds();
        if x < lo || x > hi {
            return 0.0;
        }
        (self.pdf)(x)
    }

    pub fn normalization(&self) -> Result<f64, AnalyticError> {
        let f = |x: f64| self.pdf(x);
        Ok(self.support.integrate(&f, DENSITY_TOL)?)
    }

    /// CDF at every point of an ascending slice.
    pub fn cdf_sorted(&self, sorted: &[f64]) -> Result<Vec<f64>, AnalyticError> {
        let f = |x: f64| self.pdf(x);
        Ok(self.support.cumulative(&f, sorted, DENSITY_TOL)?)
    }

    pub fn ks(&self, sample: &[f64]) -> Result<KsResult, AnalyticError> {
        let mut xs = sample.to_vec();
        xs.sort_by(f64::total_cmp);
        let cdf: Vec<(f64, f64)> = self.cdf_sorted(&xs)?.into_iter().map(|c| (c, c)).collect();
        Ok(ks_sorted(&xs, &cdf))
    }

    /// Tabulates at `n` cell midpoints of [`Support::display_range`].
    pub fn curve(&self, n: usize) -> Result<DensityCurve, AnalyticError> {
        let (lo, hi) = self.support.display_range();
        let param: Vec<f64> = (0..n).map(|i| lo + (hi - lo) * (i as f64 + 0.5) / n as f64).collect();
        let values: Vec<f64> = param.iter().map(|&x| self.pdf(x)).collect();
        let singular = values.iter().map(|v| !v.is_finite()).collect();
        Ok(DensityCurve {
            domain: self.domain,
            marginal: self.marginal,
            param,
            values,
            singular,
            normalization: self.normalization()?,
            tail_bound: self.tail_bound,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityCurve {
    pub domain: DomainTag,
    pub marginal: Marginal,
    pub param: Vec<f64>,
    pub values: Vec<f64>,
    /// Points where a branch derivative vanished.
    pub singular: Vec<bool>,
    /// `∫ density` by adaptive quadrature over the full support.
    pub normalization: f64,
    pub tail_bound: f64,
}

impl DensityCurve {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("param,value\n");
        for (x, v) in self.param.iter().zip(&self.values) {
            let _ = writeln!(out, "{x:?},{v:?}");
        }
        out
    }
}

/// `Σ_{t ∈ f⁻¹(x)} ρ(t) / |f'(t)|`. A vanishing derivative makes the value
/// NaN, which quadrature treats as a zero-measure singular point.
pub fn pushforward_density(
    rho: impl Fn(f64) -> f64 + Send + Sync + 'static,
    preimages: impl Fn(f64) -> Vec<f64> + Send + Sync + 'static,
    derivative: impl Fn(f64) -> f64 + Send + Sync + 'static,
) -> impl Fn(f64) -> f64 + Send + Sync + 'static {
    move |x| {
        let mut total = 0.0;
        for t in preimages(x) {
            let d = derivative(t).abs();
            if d == 0.0 {
                return f64::NAN;
            }
            total += rho(t) / d;
        }
        total
    }
}

/// One branch of a boundary written as a graph over the marginal's axis:
/// the other coordinate and its derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphBranch {
    pub value: f64,
    pub slope: f64,
}

/// `Σ_branches ρ(point) √(1 + slope²)`: marginal of an arclength density.
/// `point(x, value)` rebuilds the boundary point from the two coordinates.
pub fn marginalize(
    rho: impl Fn(Complex64) -> f64 + Send + Sync + 'static,
    axis: Marginal,
    branches: impl Fn(f64) -> Vec<GraphBranch> + Send + Sync + 'static,
) -> impl Fn(f64) -> f64 + Send + Sync + 'static {
    move |x| {
        let mut total = 0.0;
        for b in branches(x) {
            if !b.slope.is_finite() {
                return f64::NAN;
            }
            let w = match axis {
                Marginal::Y => Complex64::new(b.value, x),
                _ => Complex64::new(x, b.value),
            };
            total += rho(w) * b.slope.hypot(1.0);
        }
        total
    }
}

pub fn sech(x: f64) -> f64 {
    // 2/(e^x + e^-x) without overflow.
    let a = x.abs();
    2.0 * (-a).exp() / (1.0 + (-2.0 * a).exp())
}

/// CDF of the strip X-marginal `sech(πx/2)/2`.
pub fn strip_cdf(x: f64) -> f64 {
    2.0 / PI * (0.5 * PI * x).exp().atan()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_pushforward_is_unchanged() {
        let rho = |t: f64| (-t * t / 2.0).exp() / (2.0 * PI).sqrt();
        let out = pushforward_density(rho, |x| vec![x], |_| 1.0);
        for x in [-2.0, 0.0, 0.7] {
            assert_eq!(out(x), rho(x));
        }
    }

    #[test]
    fn vanishing_derivative_is_singular() {
        let out = pushforward_density(|_| 1.0, |x: f64| vec![x.sqrt(), -x.sqrt()], |t| 2.0 * t);
        assert!(out(0.0).is_nan());
        assert!((out(4.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn sech_is_stable() {
        assert_eq!(sech(0.0), 1.0);
        assert!(sech(800.0) == 0.0 && sech(-800.0) == 0.0);
        assert!((sech(1.3) - 1.0 / 1.3f64.cosh()).abs() < 1e-15);
        assert!((strip_cdf(0.0) - 0.5).abs() < 1e-15);
    }
}
