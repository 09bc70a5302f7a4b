//! The three uniqueness conditions (symmetry about the real axis,
//! Δ-convexity, finite `E[τ^{p/2}]`) as evidence-graded checks, and boundary
//! comparison between domains.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::construction::DomainArtifact;
use crate::geometry::{self, ClipWindow, Domain, GeometryError};
use crate::simulate::{euler_exit, moment_estimate, tail_index, BudgetPolicy, EulerOptions, ExitSampleSet, SimulationError};
use crate::stats::{BootstrapCi, TailEstimate};

pub const SYMMETRY_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum UniquenessError {
    #[error("domains are clipped differently: {0:?} vs {1:?}")]
    WindowMismatch(Option<ClipWindow>, Option<ClipWindow>),
    #[error("boundary is not simple: segments {0} and {1} meet")]
    NotSimple(usize, usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Simulation(#[from] SimulationError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "finite")]
    Finite,
    #[serde(rename = "infinite-suspected")]
    InfiniteSuspected,
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentOptions {
    pub p: f64,
    pub start: Complex64,
    pub dt: f64,
    pub n_paths: usize,
    pub seed: u64,
}

impl MomentOptions {
    pub fn new(p: f64, start: Complex64, n_paths: usize, seed: u64) -> Self {
        MomentOptions {
            p,
            start,
            dt: 1e-2,
            n_paths,
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentEvidence {
    pub p: f64,
    /// Moment order `p/2` of `τ`.
    pub q: f64,
    pub verdict: Verdict,
    pub basis: String,
    /// `E[τ^q]` in the clipped domain, and with the window halved.
    pub full_window: Option<BootstrapCi>,
    pub half_window: Option<BootstrapCi>,
    pub growth_ratio: Option<f64>,
    pub tail: Option<TailEstimate>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryMatch {
    pub hausdorff_distance: f64,
    pub reference_artifact_id: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniquenessReport {
    pub symmetric: bool,
    pub delta_convex: bool,
    pub moment_finite_estimate: MomentEvidence,
    pub boundary_match: Option<BoundaryMatch>,
    pub all_conditions: bool,
}

/// Symmetry and Δ-convexity of the curve, plus moment evidence: bounded
/// domains have all moments; clipped ones are simulated at the given
/// window and at half of it, and a significant rise of the `E[τ^q]`
/// estimate marks the moment as infinite.
pub fn check_conditions(domain: &Domain, opts: MomentOptions) -> Result<UniquenessReport, UniquenessError> {
    if let Some((i, j)) = geometry::first_self_intersection(&domain.curve) {
        return Err(UniquenessError::NotSimple(i, j));
    }
    let window_symmetric = domain.window.is_none_or(|w| w.y_min == -w.y_max);
    let symmetric = window_symmetric && geometry::is_symmetric(&domain.curve, SYMMETRY_TOL);
    let delta_convex = symmetric && geometry::is_delta_convex(&domain.curve, SYMMETRY_TOL)?;
    let moment = moment_evidence(domain, opts)?;
    Ok(UniquenessReport {
        symmetric,
        delta_convex,
        all_conditions: symmetric && delta_convex && moment.verdict == Verdict::Finite,
        moment_finite_estimate: moment,
        boundary_match: None,
    })
}

pub fn moment_evidence(domain: &Domain, opts: MomentOptions) -> Result<MomentEvidence, UniquenessError> {
    let q = opts.p / 2.0;
    if domain.window.is_none() {
        return Ok(MomentEvidence {
            p: opts.p,
            q,
            verdict: Verdict::Finite,
            basis: "bounded domain: the exit time has exponential tails".into(),
            full_window: None,
            half_window: None,
            growth_ratio: None,
            tail: None,
        });
    }
    let run = |d: &Domain| -> Result<ExitSampleSet, SimulationError> {
        let mut e = EulerOptions::new(opts.dt, opts.n_paths, opts.seed).with_bridge(true);
        e.budget = BudgetPolicy::Censor;
        euler_exit(d, opts.start, e)
    };
    let full = run(domain)?;
    let half = run(&domain.with_window_scaled(0.5))?;
    let m_full = moment_estimate(&full, q, opts.seed)?;
    let m_half = moment_estimate(&half, q, opts.seed)?;
    let growth = m_full.estimate / m_half.estimate;
    let k = (opts.n_paths / 20).max(50);
    let tail = tail_index(&full, k).ok();
    let margin = 2.0 / (k as f64).sqrt();
    let (verdict, basis) = if m_full.lower > m_half.upper {
        (
            Verdict::InfiniteSuspected,
            format!("E[tau^{q}] grows by {growth:.3} when the window doubles"),
        )
    } else {
        match tail {
            Some(t) if t.power_tail && t.alpha * (1.0 + margin) < q => (
                Verdict::InfiniteSuspected,
                format!("power tail with Hill index {:.3} < {q}; window growth {growth:.3}", t.alpha),
            ),
            Some(t) if !t.power_tail => (Verdict::Finite, "stable under window doubling; no power tail".into()),
            Some(t) if t.alpha * (1.0 - margin) > q => (
                Verdict::Finite,
                format!("stable under window doubling; Hill index {:.3} > {q}", t.alpha),
            ),
            _ => (Verdict::Inconclusive, "stable under window doubling; tail index not above q".into()),
        }
    };
    Ok(MomentEvidence {
        p: opts.p,
        q,
        verdict,
        basis,
        full_window: Some(m_full),
        half_window: Some(m_half),
        growth_ratio: Some(growth),
        tail,
    })
}

/// Symmetric Hausdorff distance between two identically clipped domains,
/// over the vertices inside the window.
pub fn compare_domains(a: &Domain, b: &Domain) -> Result<f64, UniquenessError> {
    if a.window != b.window {
        return Err(UniquenessError::WindowMismatch(a.window, b.window));
    }
    let window = a.window;
    Ok(geometry::hausdorff(&a.curve, &b.curve, |p| {
        window.is_none_or(|w| w.contains_interior(p))
    }))
}

pub fn compare_artifacts(a: &DomainArtifact, b: &DomainArtifact) -> Result<BoundaryMatch, UniquenessError> {
    let d = compare_domains(&Domain::bounded(a.curve()?), &Domain::bounded(b.curve()?))?;
    Ok(BoundaryMatch {
        hausdorff_distance: d,
        reference_artifact_id: b.provenance.measure_sha256.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::fixtures;

    #[test]
    fn bounded_slit_fails_only_delta_convexity() {
        let r = check_conditions(&fixtures::slit_domain(), MomentOptions::new(4.0, Complex64::new(1.5, 0.0), 100, 1)).unwrap();
        assert!(r.symmetric && !r.delta_convex);
        assert_eq!(r.moment_finite_estimate.verdict, Verdict::Finite);
        assert!(!r.all_conditions);
    }

    #[test]
    fn clipped_strip_passes() {
        let r = check_conditions(&fixtures::vertical_strip(1.0, 8.0), MomentOptions::new(4.0, Complex64::new(0.0, 0.0), 4000, 3)).unwrap();
        assert!(r.all_conditions, "{r:?}");
    }

    #[test]
    fn cross_fails_only_the_moment() {
        let r = check_conditions(&fixtures::cross_domain(150.0), MomentOptions::new(2.0, Complex64::new(0.0, 0.0), 4000, 3)).unwrap();
        assert!(r.symmetric && r.delta_convex);
        assert_eq!(r.moment_finite_estimate.verdict, Verdict::InfiniteSuspected, "{r:?}");
    }

    #[test]
    fn window_mismatch() {
        let a = fixtures::vertical_strip(1.0, 5.0);
        let b = fixtures::vertical_strip(1.0, 6.0);
        assert!(matches!(compare_domains(&a, &b), Err(UniquenessError::WindowMismatch(..))));
        assert_eq!(compare_domains(&a, &a).unwrap(), 0.0);
    }

    #[test]
    fn parabola_is_not_symmetric_about_its_embedding_axis() {
        let turned = fixtures::parabola(50.0, 2001).rotated_quarter();
        assert!(!geometry::is_symmetric(&turned.curve, SYMMETRY_TOL));
        let strip = fixtures::horizontal_strip(1.0, 50.0).rotated_quarter();
        assert!(geometry::is_symmetric(&strip.curve, SYMMETRY_TOL));
    }

    #[test]
    fn verdict_labels() {
        assert_eq!(serde_json::to_string(&Verdict::InfiniteSuspected).unwrap(), "\"infinite-suspected\"");
    }
}
