use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use super::{path_rng, Backend, BudgetPolicy, ExitRecord, ExitSampleSet, SimulationError};
use crate::geometry::Domain;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WosOptions {
    /// Absorption distance.
    pub eps: f64,
    pub n_paths: usize,
    pub seed: u64,
    pub max_steps: u64,
    pub budget: BudgetPolicy,
}

impl WosOptions {
    pub fn new(eps: f64, n_paths: usize, seed: u64) -> Self {
        WosOptions {
            eps,
            n_paths,
            seed,
            max_steps: 1_000_000,
            budget: BudgetPolicy::Fail,
        }
    }
}

/// Walk on spheres: jump to a uniform point of the largest inscribed circle
/// until within `eps` of the boundary, then project onto it. The time field
/// sums `R²/2` over the circles, an unbiased estimate of `E[τ]` only.
pub fn wos_exit(domain: &Domain, start: Complex64, opts: WosOptions) -> Result<ExitSampleSet, SimulationError> {
    if !(opts.eps > 0.0 && opts.eps.is_finite()) {
        return Err(SimulationError::InvalidTolerance(opts.eps));
    }
    if opts.n_paths == 0 {
        return Err(SimulationError::NoPaths);
    }
    if !domain.contains(start) {
        return Err(SimulationError::StartOutside(start));
    }
    let records: Vec<Result<ExitRecord, SimulationError>> = (0..opts.n_paths as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = path_rng(opts.seed, i);
            let mut pos = start;
            let mut time = 0.0;
            let mut k = 0;
            loop {
                let (d, q, frame) = domain.nearest(pos);
                if !d.is_finite() {
                    return Err(SimulationError::DistanceQueryFailure(pos));
                }
                if d < opts.eps {
                    return Ok(ExitRecord {
                        exit_point: q,
                        exit_time: time,
                        n_steps: k,
                        stream_id: i,
                        frame,
                        censored: false,
                    });
                }
                if k >= opts.max_steps {
                    return Ok(ExitRecord {
                        exit_point: pos,
                        exit_time: time,
                        n_steps: k,
                        stream_id: i,
                        frame: false,
                        censored: true,
                    });
                }
                k += 1;
                time += 0.5 * d * d;
                let angle = 2.0 * PI * rng.random::<f64>();
                pos += Complex64::from_polar(d, angle);
            }
        })
        .collect();
    let records = records.into_iter().collect::<Result<Vec<_>, _>>()?;
    let over = records.iter().filter(|r| r.censored).count();
    if over > 0 && opts.budget == BudgetPolicy::Fail {
        return Err(SimulationError::PathBudgetExceeded {
            paths: over,
            max_steps: opts.max_steps,
        });
    }
    Ok(ExitSampleSet {
        backend: Backend::Wos,
        seed: opts.seed,
        step: opts.eps,
        start,
        bridge: false,
        mean_time_only: true,
        delta_report: 0.0,
        records,
    })
}
