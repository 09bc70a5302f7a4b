//! Domain synthesis: quantile → even profile `φ(θ) = G(|θ|/π)` → cosine
//! coefficients → conjugate series → boundary curve of `φ̃(𝔻)`, where
//! `φ̃(z) = Σ a_n zⁿ`.
//!
//! Coefficients follow `a_n = (1/π)∫_{-π}^{π} φ(θ) cos(nθ) dθ`, so that
//! `φ = Σ a_n cos(nθ)` and `E[τ] = ½ Σ a_n²`.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{self, BoundaryCurve, GeometryError};
use crate::hilbert::{self, HilbertError, PeriodicFunction, PvOptions};
use crate::measures::{MeasureDocument, MeasureError, MeasureSpec, QuantileFn};
use crate::transform;

pub const DEFAULT_N_COEFFS: usize = 1 << 12;
pub const DEFAULT_GRID: usize = 1 << 14;
/// `|a_0|` at or above this means the profile is not centered.
pub const MEAN_TOL: f64 = 1e-8;
/// Bound on the computed sine coefficients of an even profile.
pub const SINE_TOL: f64 = 1e-10;
/// Tolerance of the geometric checks on synthesized boundaries.
pub const GEOMETRY_TOL: f64 = 1e-8;
/// Largest acceptable truncation tail in [`evaluate_map`].
pub const MAP_TAIL_TOL: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstructionError {
    #[error("grid size M = {0} must be a power of two no smaller than 1024")]
    InvalidGrid(usize),
    #[error("need M >= 2N and N >= 1, got N = {n}, M = {m}")]
    InvalidTruncation { n: usize, m: usize },
    #[error("profile value at u = {u} is not finite")]
    UnboundedValue { u: f64 },
    #[error("profile mean a_0 = {a0:e} is not zero; the law was not centered")]
    MeanNotZero { a0: f64 },
    #[error("profile is not even: largest sine coefficient {max:e}")]
    OddComponent { max: f64 },
    #[error("|z| = {modulus} is too close to the unit circle: truncation tail bound {tail_bound:e}")]
    OutsideDisk { modulus: f64, tail_bound: f64 },
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
    #[error("artifact document: {0}")]
    Document(String),
}

/// How `φ` is sampled on each grid cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sampling {
    /// Exact mean of `G` over the cell, from the closed-form `∫G`.
    CellAverage,
    /// `G(|θ_j|/π)` at the node.
    Point,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstructionConfig {
    pub n_coeffs: usize,
    pub grid: usize,
    pub sampling: Sampling,
}

impl Default for ConstructionConfig {
    fn default() -> Self {
        ConstructionConfig {
            n_coeffs: DEFAULT_N_COEFFS,
            grid: DEFAULT_GRID,
            sampling: Sampling::CellAverage,
        }
    }
}

impl ConstructionConfig {
    pub fn new(n_coeffs: usize, grid: usize) -> Self {
        ConstructionConfig {
            n_coeffs,
            grid,
            sampling: Sampling::CellAverage,
        }
    }

    pub fn validate(&self) -> Result<(), ConstructionError> {
        if !self.grid.is_power_of_two() || self.grid < 1024 {
            return Err(ConstructionError::InvalidGrid(self.grid));
        }
        if self.n_coeffs == 0 || self.grid < 2 * self.n_coeffs {
            return Err(ConstructionError::InvalidTruncation {
                n: self.n_coeffs,
                m: self.grid,
            });
        }
        Ok(())
    }
}

/// `φ` on the offset grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileSamples {
    pub theta: Vec<f64>,
    pub phi: Vec<f64>,
    pub sampling: Sampling,
    pub support_unbounded: bool,
}

/// Samples `φ(θ) = G(|θ|/π)` on `θ_j = -π + π(2j+1)/M`.
///
/// Cell `j` covers `u ∈ [|M-2j-2|, |M-2j|]/M` on either side of `θ = 0`, so
/// mirrored cells share their `u`-interval and evenness is exact.
pub fn build_profile(
    g: &QuantileFn,
    m: usize,
    sampling: Sampling,
) -> Result<ProfileSamples, ConstructionError> {
    if !m.is_power_of_two() || m < 1024 {
        return Err(ConstructionError::InvalidGrid(m));
    }
    let half = m / 2;
    // Values for the right half j = M/2 .. M, mirrored onto the left.
    let mut right = Vec::with_capacity(half);
    for k in 0..half {
        let (u0, u1) = ((2 * k) as f64 / m as f64, (2 * k + 2) as f64 / m as f64);
        let v = match sampling {
            Sampling::CellAverage => g.cell_average(u0, u1),
            Sampling::Point => g.eval(0.5 * (u0 + u1)),
        };
        if !v.is_finite() {
            return Err(ConstructionError::UnboundedValue { u: 0.5 * (u0 + u1) });
        }
        right.push(v);
    }
    let phi: Vec<f64> = right.iter().rev().chain(right.iter()).copied().collect();
    Ok(ProfileSamples {
        theta: transform::offset_grid(m),
        phi,
        sampling,
        support_unbounded: g.is_unbounded(),
    })
}

/// The profile and its cosine coefficients `a_1..a_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierProfile {
    pub a: Vec<f64>,
    pub grid: usize,
    pub phi_values: Vec<f64>,
    /// Discrete `a_0` (grid mean), checked then discarded.
    pub a0: f64,
    /// Largest computed `|b_n|`.
    pub max_sine: f64,
}

impl FourierProfile {
    pub fn n_coeffs(&self) -> usize {
        self.a.len()
    }

    /// `½ Σ a_n²`.
    pub fn parseval_etau(&self) -> f64 {
        0.5 * self.a.iter().map(|x| x * x).sum::<f64>()
    }
}

pub fn cosine_coefficients(
    profile: &ProfileSamples,
    n: usize,
) -> Result<FourierProfile, ConstructionError> {
    let m = profile.phi.len();
    if n == 0 || m < 2 * n {
        return Err(ConstructionError::InvalidTruncation { n, m });
    }
    let c = transform::analyze(&profile.phi, n);
    if c.mean.abs() >= MEAN_TOL {
        return Err(ConstructionError::MeanNotZero { a0: c.mean });
    }
    let max_sine = c.sin.iter().fold(0.0_f64, |acc, b| acc.max(b.abs()));
    if max_sine >= SINE_TOL {
        return Err(ConstructionError::OddComponent { max: max_sine });
    }
    let mut a = c.cos;
    if profile.sampling == Sampling::CellAverage {
        // Exact coefficients of the piecewise-constant profile: the cell
        // integral of cos(nθ) is h·cos(nθ_j)·sinc(nh/2).
        for (i, an) in a.iter_mut().enumerate() {
            let x = (i + 1) as f64 * PI / m as f64;
            *an *= x.sin() / x;
        }
    }
    Ok(FourierProfile {
        a,
        grid: m,
        phi_values: profile.phi.clone(),
        a0: c.mean,
        max_sine,
    })
}

/// `Σ_{n≤N} a_n sin(nθ_j)` on the offset grid of size `m`.
pub fn conjugate_series(a: &[f64], m: usize) -> Vec<f64> {
    transform::synthesize(a, m).1
}

/// `Σ_{n≤N} a_n cos(nθ_j)`: the truncated profile.
pub fn cosine_series(a: &[f64], m: usize) -> Vec<f64> {
    transform::synthesize(a, m).0
}

/// Cesàro means `a_n (1 - n/(N+1))`; for plotting only.
pub fn fejer(a: &[f64]) -> Vec<f64> {
    let n1 = (a.len() + 1) as f64;
    a.iter()
        .enumerate()
        .map(|(i, x)| x * (1.0 - (i + 1) as f64 / n1))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub parseval_etau: f64,
    pub hardy_p_norm_estimate: f64,
    pub symmetry_ok: bool,
    pub delta_convex_ok: bool,
    pub simple_ok: bool,
    /// Set when the truncated boundary self-intersects.
    pub univalence_suspect: bool,
    pub closure_ok: bool,
    pub symmetry_defect: f64,
    pub a0: f64,
    pub max_sine: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub measure_sha256: String,
    pub measure: MeasureDocument,
    pub n_coeffs: usize,
    pub grid: usize,
    pub sampling: Sampling,
}

/// Numerical stand-in for `Ω = φ̃(𝔻)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainArtifact {
    pub n_coeffs: usize,
    pub a: Vec<f64>,
    /// `[θ, x = φ(θ), y = Hφ(θ)]`.
    pub boundary: Vec<[f64; 3]>,
    pub p: f64,
    pub diagnostics: Diagnostics,
    pub support_unbounded: bool,
    pub provenance: Provenance,
}

pub fn synthesize(
    spec: &MeasureSpec,
    config: ConstructionConfig,
) -> Result<DomainArtifact, ConstructionError> {
    config.validate()?;
    spec.check_hypotheses()?;
    let g = spec.quantile();
    let profile = build_profile(&g, config.grid, config.sampling)?;
    let fourier = cosine_coefficients(&profile, config.n_coeffs)?;
    let y = conjugate_series(&fourier.a, config.grid);
    let boundary: Vec<[f64; 3]> = profile
        .theta
        .iter()
        .zip(&profile.phi)
        .zip(&y)
        .map(|((&t, &x), &y)| [t, x, y])
        .collect();

    let p = spec.p();
    let points: Vec<Complex64> = boundary.iter().map(|b| Complex64::new(b[1], b[2])).collect();
    let hardy = (points.iter().map(|w| w.norm().powf(p)).sum::<f64>() / points.len() as f64)
        .powf(1.0 / p);
    let curve = curve_of(&boundary)?;
    let symmetry_defect = geometry::symmetry_defect(&curve);
    let symmetry_ok = symmetry_defect <= GEOMETRY_TOL;
    let delta_convex_ok = symmetry_ok && geometry::is_delta_convex(&curve, GEOMETRY_TOL)?;
    let simple_ok = geometry::is_simple(&curve);
    let n = points.len();
    let max_step = (0..n - 1)
        .map(|j| (points[j + 1] - points[j]).norm())
        .fold(0.0, f64::max);
    let closure_ok = (points[0] - points[n - 1]).norm() <= max_step;

    Ok(DomainArtifact {
        n_coeffs: config.n_coeffs,
        a: fourier.a.clone(),
        boundary,
        p,
        diagnostics: Diagnostics {
            parseval_etau: fourier.parseval_etau(),
            hardy_p_norm_estimate: hardy,
            symmetry_ok,
            delta_convex_ok,
            simple_ok,
            univalence_suspect: !simple_ok,
            closure_ok,
            symmetry_defect,
            a0: fourier.a0,
            max_sine: fourier.max_sine,
        },
        support_unbounded: profile.support_unbounded,
        provenance: Provenance {
            measure_sha256: spec.digest(),
            measure: spec.to_document(),
            n_coeffs: config.n_coeffs,
            grid: config.grid,
            sampling: config.sampling,
        },
    })
}

/// Boundary polyline with consecutive repeats removed.
fn curve_of(boundary: &[[f64; 3]]) -> Result<BoundaryCurve, GeometryError> {
    let mut pts: Vec<Complex64> = Vec::with_capacity(boundary.len());
    for b in boundary {
        let w = Complex64::new(b[1], b[2]);
        if pts.last() != Some(&w) {
            pts.push(w);
        }
    }
    while pts.len() > 1 && pts.first() == pts.last() {
        pts.pop();
    }
    BoundaryCurve::new(pts)
}

/// Value of the truncated series and a bound on the dropped tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapValue {
    pub value: Complex64,
    pub tail_bound: f64,
}

/// `Σ_{n≤N} a_n zⁿ` by Horner's rule; fails when the tail bound
/// `max_{N/2≤n≤N}|a_n| · |z|^{N+1}/(1-|z|)` exceeds [`MAP_TAIL_TOL`].
pub fn evaluate_map(artifact: &DomainArtifact, z: Complex64) -> Result<MapValue, ConstructionError> {
    evaluate_series(&artifact.a, z, MAP_TAIL_TOL)
}

pub fn evaluate_series(a: &[f64], z: Complex64, tail_tol: f64) -> Result<MapValue, ConstructionError> {
    let r = z.norm();
    let n = a.len();
    let envelope = a[n / 2..].iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let tail_bound = if r < 1.0 {
        envelope * r.powi(n as i32 + 1) / (1.0 - r)
    } else {
        f64::INFINITY
    };
    if r > 1.0 - 1e-9 || tail_bound > tail_tol {
        return Err(ConstructionError::OutsideDisk {
            modulus: r,
            tail_bound,
        });
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for &an in a.iter().rev() {
        acc = (acc + an) * z;
    }
    Ok(MapValue {
        value: acc,
        tail_bound,
    })
}

/// Agreement between the conjugate series and the principal-value transform
/// of the truncated profile `φ_N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PvAgreement {
    pub max_abs_diff: f64,
    pub points_checked: usize,
    pub points_guarded: usize,
}

/// Compares `y` with `PV[φ_N]` at every `stride`-th grid point, skipping
/// three cells on either side of detected jumps.
pub fn pv_agreement(artifact: &DomainArtifact, stride: usize) -> Result<PvAgreement, ConstructionError> {
    let m = artifact.boundary.len();
    let phi_n = cosine_series(&artifact.a, m);
    let f = PeriodicFunction::new(phi_n, PI / m as f64)?;
    let at: Vec<usize> = (0..m).step_by(stride.max(1)).collect();
    // Only the h/2h extrapolation is used; the 4h level under-resolves φ_N
    // when M = 4N, so its disagreement is not a singularity signal here.
    let opts = PvOptions {
        eta_min: PI / 64.0,
        tol: 1.0,
    };
    let (pv, _) = hilbert::hilbert_pv_at(&f, &at, opts)?;
    // Jumps are located on φ itself; φ_N only rings around them.
    let phi: Vec<f64> = artifact.boundary.iter().map(|b| b[1]).collect();
    let jumps = hilbert::detect_jumps(&phi);
    let mut max_abs_diff = 0.0_f64;
    let mut points_guarded = 0;
    for (&j, v) in at.iter().zip(&pv) {
        if jumps.iter().any(|&c| hilbert::cyclic_distance(j, c, m) <= 3) {
            points_guarded += 1;
            continue;
        }
        max_abs_diff = max_abs_diff.max((v - artifact.boundary[j][2]).abs());
    }
    Ok(PvAgreement {
        max_abs_diff,
        points_checked: at.len() - points_guarded,
        points_guarded,
    })
}

impl DomainArtifact {
    pub fn curve(&self) -> Result<BoundaryCurve, GeometryError> {
        Ok(curve_of(&self.boundary)?.with_unbounded_support(self.support_unbounded))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("artifacts always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, ConstructionError> {
        serde_json::from_str(text).map_err(|e| ConstructionError::Document(e.to_string()))
    }

    pub fn measure(&self) -> Result<MeasureSpec, ConstructionError> {
        Ok(MeasureSpec::from_document(self.provenance.measure.clone())?)
    }

    pub fn boundary_csv(&self) -> String {
        let mut out = String::from("theta,x,y\n");
        for b in &self.boundary {
            let _ = writeln!(out, "{},{},{}", b[0], b[1], b[2]);
        }
        out
    }

    /// Boundary as an SVG polyline; `smoothed` replaces the conjugate
    /// series by its Fejér means and the profile by the matching cosine
    /// series, for display only.
    pub fn boundary_svg(&self, smoothed: bool) -> String {
        let pts: Vec<(f64, f64)> = if smoothed {
            let m = self.boundary.len();
            let (x, y) = transform::synthesize(&fejer(&self.a), m);
            x.into_iter().zip(y).collect()
        } else {
            self.boundary.iter().map(|b| (b[1], b[2])).collect()
        };
        polyline_svg(&pts)
    }
}

/// A closed polyline scaled into a 600-pixel square, y axis pointing up.
pub fn polyline_svg(pts: &[(f64, f64)]) -> String {
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-12);
    let scale = 560.0 / span;
    let mut out = String::from(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n<polygon fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"",
    );
    for (i, &(x, y)) in pts.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{:.3},{:.3}", 20.0 + (x - x0) * scale, 580.0 - (y - y0) * scale);
    }
    out.push_str("\"/>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{Atom, Builtin};

    fn uniform() -> MeasureSpec {
        MeasureSpec::builtin(Builtin::Uniform { a: -1.0, b: 1.0 }, 4.0).unwrap()
    }

    fn two_point() -> MeasureSpec {
        MeasureSpec::builtin(Builtin::TwoPoint { c: 1.0 }, 8.0).unwrap()
    }

    #[test]
    fn profile_examples() {
        let g = uniform().quantile();
        let prof = build_profile(&g, 1024, Sampling::Point).unwrap();
        for (t, v) in prof.theta.iter().zip(&prof.phi) {
            assert!((v - (2.0 * t.abs() / PI - 1.0)).abs() < 1e-14);
        }
        let g = two_point().quantile();
        let prof = build_profile(&g, 1024, Sampling::CellAverage).unwrap();
        for (t, v) in prof.theta.iter().zip(&prof.phi) {
            let expect = if t.abs() < PI / 2.0 { -1.0 } else { 1.0 };
            assert_eq!(*v, expect);
        }
        let g = MeasureSpec::builtin(Builtin::Gaussian { sigma: 1.0 }, 4.0)
            .unwrap()
            .quantile();
        let prof = build_profile(&g, 1024, Sampling::CellAverage).unwrap();
        assert!(prof.support_unbounded);
        assert!(prof.phi.iter().all(|v| v.is_finite()));
    }

    #[test]
    fn profile_is_even_and_monotone() {
        let g = MeasureSpec::builtin(Builtin::Laplace { b: 1.0 }, 4.0)
            .unwrap()
            .quantile();
        let prof = build_profile(&g, 2048, Sampling::CellAverage).unwrap();
        let m = prof.phi.len();
        for j in 0..m {
            assert_eq!(prof.phi[j], prof.phi[m - 1 - j]);
        }
        assert!(prof.phi[m / 2..].windows(2).all(|w| w[1] >= w[0]));
    }

    #[test]
    fn uniform_coefficients_match_closed_form() {
        let g = uniform().quantile();
        let prof = build_profile(&g, 1 << 14, Sampling::CellAverage).unwrap();
        let f = cosine_coefficients(&prof, 1 << 12).unwrap();
        let m = (1 << 14) as f64;
        for n in 1..=64 {
            let exact = if n % 2 == 1 {
                -8.0 / (PI * PI * (n * n) as f64)
            } else {
                0.0
            };
            // Cell averaging and the sinc weight each perturb by (nπ/M)²/6.
            let bound = (n as f64 * PI / m).powi(2) * exact.abs() / 2.0 + 1e-12;
            assert!((f.a[n - 1] - exact).abs() < bound, "n={n}");
        }
        assert!(f.max_sine < SINE_TOL);
    }

    #[test]
    fn rejects_uncentered_profiles() {
        let s = MeasureSpec::builtin(Builtin::Uniform { a: 0.0, b: 2.0 }, 4.0).unwrap();
        let prof = build_profile(&s.quantile(), 1024, Sampling::CellAverage).unwrap();
        assert!(matches!(
            cosine_coefficients(&prof, 256),
            Err(ConstructionError::MeanNotZero { .. })
        ));
        assert!(matches!(
            synthesize(&s, ConstructionConfig::new(256, 1024)),
            Err(ConstructionError::Measure(MeasureError::NotCentered { .. }))
        ));
    }

    #[test]
    fn config_guards() {
        assert!(ConstructionConfig::new(1024, 1000).validate().is_err());
        assert!(ConstructionConfig::new(1024, 1024).validate().is_err());
        assert!(ConstructionConfig::new(512, 1024).validate().is_ok());
    }

    #[test]
    fn single_mode_conjugate() {
        let y = conjugate_series(&[1.0], 1024);
        let j = 3 * 1024 / 4;
        let t = transform::offset_node(j, 1024);
        assert!((y[j] - t.sin()).abs() < 1e-14);
    }

    #[test]
    fn two_point_coefficients_are_exact() {
        let g = two_point().quantile();
        let prof = build_profile(&g, 1 << 14, Sampling::CellAverage).unwrap();
        let f = cosine_coefficients(&prof, 1 << 12).unwrap();
        for (i, an) in f.a.iter().enumerate() {
            let n = (i + 1) as f64;
            let exact = -4.0 / PI * (n * PI / 2.0).sin() / n;
            assert!((an - exact).abs() < 1e-13, "n={n}");
        }
    }

    #[test]
    fn two_point_map_value() {
        let art = synthesize(&two_point(), ConstructionConfig::new(1 << 12, 1 << 14)).unwrap();
        let v = evaluate_map(&art, Complex64::new(0.5, 0.0)).unwrap();
        assert!((v.value.re + 4.0 / PI * 0.5f64.atan()).abs() < 1e-6, "{:?}", v);
        assert_eq!(v.value.im, 0.0);
        assert_eq!(evaluate_map(&art, Complex64::new(0.0, 0.0)).unwrap().value, Complex64::new(0.0, 0.0));
        let z = Complex64::new(0.3, 0.4);
        let (a, b) = (evaluate_map(&art, z).unwrap().value, evaluate_map(&art, z.conj()).unwrap().value);
        assert!((a.conj() - b).norm() < 1e-15);
        assert!(matches!(
            evaluate_map(&art, Complex64::new(0.0, 0.9999)),
            Err(ConstructionError::OutsideDisk { .. })
        ));
    }

    #[test]
    fn synthesized_diagnostics() {
        for spec in [uniform(), two_point()] {
            let art = synthesize(&spec, ConstructionConfig::new(1 << 10, 1 << 12)).unwrap();
            let d = &art.diagnostics;
            assert!(d.symmetry_ok && d.delta_convex_ok && d.simple_ok && d.closure_ok, "{d:?}");
            let m2 = spec.moment(2.0).unwrap();
            assert!((d.parseval_etau - m2).abs() < 2e-3, "{} vs {m2}", d.parseval_etau);
        }
    }

    #[test]
    fn interior_atom_gives_slit() {
        let s = MeasureSpec::discrete(
            vec![Atom { x: -1.0, weight: 0.25 }, Atom { x: 0.0, weight: 0.5 }, Atom { x: 1.0, weight: 0.25 }],
            4.0,
        )
        .unwrap();
        let art = synthesize(&s, ConstructionConfig::new(1 << 10, 1 << 12)).unwrap();
        assert!((art.diagnostics.parseval_etau - 0.5).abs() < 2e-3);
        // The interior atom gives a flat of φ whose conjugate blows up at both
        // ends: the boundary runs up x = 0 and back, a slit.
        assert!(art.diagnostics.univalence_suspect);
        let m = art.boundary.len();
        let mid: Vec<f64> = (m / 2..m).filter(|&j| art.boundary[j][1] == 0.0).map(|j| art.boundary[j][2]).collect();
        let peak = mid.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert!(mid[0] < peak && *mid.last().unwrap() < peak);
    }

    #[test]
    fn json_roundtrip() {
        let art = synthesize(&uniform(), ConstructionConfig::new(512, 2048)).unwrap();
        let back = DomainArtifact::from_json(&art.to_json()).unwrap();
        assert_eq!(back, art);
        assert!(art.boundary_csv().starts_with("theta,x,y\n"));
        assert!(art.boundary_svg(true).contains("<polygon"));
    }

    #[test]
    fn unbounded_and_singular_laws_build() {
        for b in [Builtin::Gaussian { sigma: 1.0 }, Builtin::Laplace { b: 1.0 }, Builtin::Arcsine { r: 1.0 }] {
            let spec = MeasureSpec::builtin(b, 4.0).unwrap();
            let art = synthesize(&spec, ConstructionConfig::new(1 << 12, 1 << 14)).unwrap();
            let d = &art.diagnostics;
            assert!(d.symmetry_ok && d.delta_convex_ok && d.simple_ok, "{b:?}: {d:?}");
        }
    }

    #[test]
    fn conjugate_matches_principal_value() {
        for spec in [uniform(), two_point(), MeasureSpec::builtin(Builtin::Gaussian { sigma: 1.0 }, 4.0).unwrap()] {
            let art = synthesize(&spec, ConstructionConfig::new(1 << 10, 1 << 12)).unwrap();
            let pv = pv_agreement(&art, 16).unwrap();
            assert!(pv.max_abs_diff < 1e-6 && pv.points_guarded <= 8, "{pv:?}");
        }
    }

    #[test]
    fn fejer_weights() {
        assert_eq!(fejer(&[1.0, 1.0, 1.0]), vec![0.75, 0.5, 0.25]);
    }
}
