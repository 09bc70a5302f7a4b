//! Planar Brownian exit sampling: a time-stepping Euler walker and a
//! walk-on-spheres position sampler, plus embedding and tail checks built on
//! them.
//!
//! Paths are independent. Path `i` draws from the ChaCha8 stream `i` of the
//! run seed, and results are collected in path order, so output does not
//! depend on the thread count.

mod euler;
mod verify;
mod wos;

use std::fmt::Write as _;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::construction::ConstructionError;
use crate::geometry::GeometryError;
use crate::stats::{self, BootstrapCi, TailEstimate};

pub use euler::{euler_exit, EulerOptions};
pub use verify::{verify_embedding, EmbeddingReport, VerifyOptions};
pub use wos::{wos_exit, WosOptions};

/// Fraction of frame exits above which a clipped run fails.
pub const MAX_LEAKAGE: f64 = 0.005;
pub const BOOTSTRAP_RESAMPLES: usize = 1000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimulationError {
    #[error("start point {0} is not inside the domain")]
    StartOutside(Complex64),
    #[error("time step dt = {0} outside (0, 1e-2]")]
    InvalidTimeStep(f64),
    #[error("absorption distance eps = {0} must be positive and finite")]
    InvalidTolerance(f64),
    #[error("need at least one path")]
    NoPaths,
    #[error("{paths} paths exceeded the budget of {max_steps} steps")]
    PathBudgetExceeded { paths: usize, max_steps: u64 },
    #[error("nearest-boundary distance degenerated at {0}")]
    DistanceQueryFailure(Complex64),
    #[error("{fraction} of paths left through the clip frame (limit {limit})")]
    LeakageExceeded { fraction: f64, limit: f64 },
    #[error("tail index needs 50 <= k <= n/10, got k = {k} for n = {n}")]
    InvalidTailOrder { k: usize, n: usize },
    #[error("only {available} positive exit times for k = {k}")]
    InsufficientTail { k: usize, available: usize },
    #[error("exit times from the {0:?} backend do not follow the law of tau")]
    WrongBackend(Backend),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    Euler,
    Wos,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Euler => "euler",
            Backend::Wos => "wos",
        }
    }
}

/// What to do with paths that hit the step budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BudgetPolicy {
    Fail,
    /// Keep the path, flagged, at its last position and elapsed time.
    Censor,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExitRecord {
    pub exit_point: Complex64,
    pub exit_time: f64,
    pub n_steps: u64,
    pub stream_id: u64,
    /// Left through the clip frame.
    pub frame: bool,
    pub censored: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExitSampleSet {
    pub backend: Backend,
    pub seed: u64,
    /// `dt` for Euler, the absorption distance for walk-on-spheres.
    pub step: f64,
    pub start: Complex64,
    pub bridge: bool,
    /// Exit times estimate `E[τ]` only, not the law of `τ`.
    pub mean_time_only: bool,
    /// Bound on the distance from a recorded exit point to the boundary.
    pub delta_report: f64,
    pub records: Vec<ExitRecord>,
}

impl ExitSampleSet {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Records that left through the curve, not the frame or the budget.
    pub fn boundary_exits(&self) -> impl Iterator<Item = &ExitRecord> {
        self.records.iter().filter(|r| !r.frame && !r.censored)
    }

    pub fn exit_x(&self) -> Vec<f64> {
        self.boundary_exits().map(|r| r.exit_point.re).collect()
    }

    pub fn exit_y(&self) -> Vec<f64> {
        self.boundary_exits().map(|r| r.exit_point.im).collect()
    }

    pub fn exit_times(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.exit_time).collect()
    }

    pub fn leakage(&self) -> f64 {
        self.records.iter().filter(|r| r.frame).count() as f64 / self.len() as f64
    }

    pub fn censored(&self) -> usize {
        self.records.iter().filter(|r| r.censored).count()
    }

    pub fn check_leakage(&self) -> Result<(), SimulationError> {
        let fraction = self.leakage();
        if fraction > MAX_LEAKAGE {
            return Err(SimulationError::LeakageExceeded {
                fraction,
                limit: MAX_LEAKAGE,
            });
        }
        Ok(())
    }

    /// `backend,stream_id,exit_x,exit_y,exit_time,n_steps,frame,censored`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("backend,stream_id,exit_x,exit_y,exit_time,n_steps,frame,censored\n");
        for r in &self.records {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                self.backend.name(),
                r.stream_id,
                r.exit_point.re,
                r.exit_point.im,
                r.exit_time,
                r.n_steps,
                r.frame as u8,
                r.censored as u8
            );
        }
        out
    }
}

/// RNG of path `index` under `seed`.
pub fn path_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Hill estimate of the exit-time tail from the `k` largest Euler times.
pub fn tail_index(samples: &ExitSampleSet, k: usize) -> Result<TailEstimate, SimulationError> {
    if samples.backend != Backend::Euler {
        return Err(SimulationError::WrongBackend(samples.backend));
    }
    let n = samples.len();
    if k < 50 || k > n / 10 {
        return Err(SimulationError::InvalidTailOrder { k, n });
    }
    let times = samples.exit_times();
    let available = times.iter().filter(|t| **t > 0.0).count();
    stats::tail_estimate(&times, k).ok_or(SimulationError::InsufficientTail { k, available })
}

/// Bootstrap interval for `E[τ^q]` from Euler exit times.
pub fn moment_estimate(samples: &ExitSampleSet, q: f64, seed: u64) -> Result<BootstrapCi, SimulationError> {
    if samples.backend != Backend::Euler {
        return Err(SimulationError::WrongBackend(samples.backend));
    }
    let powered: Vec<f64> = samples.records.iter().map(|r| r.exit_time.powf(q)).collect();
    Ok(stats::bootstrap_mean(&powered, BOOTSTRAP_RESAMPLES, 0.95, seed))
}
