use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::{path_rng, Backend, BudgetPolicy, ExitRecord, ExitSampleSet, SimulationError};
use crate::geometry::Domain;

/// Bridge crossing probabilities below this are not sampled.
const BRIDGE_CUTOFF: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerOptions {
    pub dt: f64,
    pub n_paths: usize,
    pub seed: u64,
    /// Brownian-bridge crossing test between grid times.
    pub bridge: bool,
    pub max_steps: u64,
    pub budget: BudgetPolicy,
}

impl EulerOptions {
    pub fn new(dt: f64, n_paths: usize, seed: u64) -> Self {
        EulerOptions {
            dt,
            n_paths,
            seed,
            bridge: false,
            max_steps: 100_000_000,
            budget: BudgetPolicy::Fail,
        }
    }

    pub fn with_bridge(mut self, on: bool) -> Self {
        self.bridge = on;
        self
    }
}

/// Gaussian steps of variance `dt` per coordinate until the path leaves.
///
/// A step that crosses the boundary is cut at the crossing, credited the
/// fraction of `dt` it used, and its exit point is the intersection. With the
/// bridge on, a step whose endpoints are both inside still exits with
/// probability `exp(-2 d_a d_b / dt)`, at time `(k - ½)dt` and at the boundary
/// point nearest the closer endpoint.
pub fn euler_exit(domain: &Domain, start: Complex64, opts: EulerOptions) -> Result<ExitSampleSet, SimulationError> {
    if !(opts.dt > 0.0 && opts.dt <= 1e-2) {
        return Err(SimulationError::InvalidTimeStep(opts.dt));
    }
    if opts.n_paths == 0 {
        return Err(SimulationError::NoPaths);
    }
    if !domain.contains(start) {
        return Err(SimulationError::StartOutside(start));
    }
    let records: Vec<ExitRecord> = (0..opts.n_paths as u64)
        .into_par_iter()
        .map(|i| run_path(domain, start, &opts, &mut path_rng(opts.seed, i), i))
        .collect();
    let over = records.iter().filter(|r| r.censored).count();
    if over > 0 && opts.budget == BudgetPolicy::Fail {
        return Err(SimulationError::PathBudgetExceeded {
            paths: over,
            max_steps: opts.max_steps,
        });
    }
    Ok(ExitSampleSet {
        backend: Backend::Euler,
        seed: opts.seed,
        step: opts.dt,
        start,
        bridge: opts.bridge,
        mean_time_only: false,
        delta_report: 1e-9,
        records,
    })
}

fn run_path(domain: &Domain, start: Complex64, opts: &EulerOptions, rng: &mut ChaCha8Rng, id: u64) -> ExitRecord {
    let dt = opts.dt;
    let sd = dt.sqrt();
    let mut pos = start;
    // The disk of radius `radius` about `anchor` lies inside the domain.
    let mut anchor = start;
    let mut radius = domain.distance(start);
    // Lower bound on the boundary distance of `pos`.
    let mut d_pos = radius;
    let mut k: u64 = 0;
    let record = |point: Complex64, time: f64, k: u64, frame: bool, censored: bool| ExitRecord {
        exit_point: point,
        exit_time: time,
        n_steps: k,
        stream_id: id,
        frame,
        censored,
    };
    loop {
        if k >= opts.max_steps {
            return record(pos, k as f64 * dt, k, false, true);
        }
        k += 1;
        let prev = pos;
        let d_prev = d_pos;
        let gx: f64 = rng.sample(StandardNormal);
        let gy: f64 = rng.sample(StandardNormal);
        pos = prev + Complex64::new(gx, gy) * sd;
        let moved = (pos - anchor).norm();
        if moved < radius {
            d_pos = radius - moved;
        } else {
            if let Some(exit) = domain.first_exit(prev, pos) {
                return record(exit.point, (k as f64 - 1.0 + exit.s) * dt, k, exit.frame, false);
            }
            anchor = pos;
            radius = domain.distance(pos);
            d_pos = radius;
        }
        if opts.bridge {
            let bound = (-2.0 * d_prev * d_pos / dt).exp();
            if bound > BRIDGE_CUTOFF {
                let u: f64 = rng.random();
                if u < bound {
                    let (da, qa, fa) = domain.nearest(prev);
                    let (db, qb, fb) = domain.nearest(pos);
                    if u < (-2.0 * da * db / dt).exp() {
                        let (point, frame) = if da <= db { (qa, fa) } else { (qb, fb) };
                        return record(point, (k as f64 - 0.5) * dt, k, frame, false);
                    }
                }
            }
        }
    }
}
