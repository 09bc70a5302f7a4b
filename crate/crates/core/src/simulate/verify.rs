use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{euler_exit, moment_estimate, wos_exit, Backend, EulerOptions, ExitSampleSet, SimulationError, WosOptions, MAX_LEAKAGE};
use crate::construction::DomainArtifact;
use crate::geometry::{ClipWindow, Domain};
use crate::measures::MeasureSpec;
use crate::stats::{ks_one_sample, mean_se, BootstrapCi, KsResult, MeanEstimate};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub backend: Backend,
    pub n_paths: usize,
    pub seed: u64,
    pub dt: f64,
    pub bridge: bool,
    pub eps: f64,
    pub window: Option<ClipWindow>,
}

impl VerifyOptions {
    pub fn euler(dt: f64, n_paths: usize, seed: u64) -> Self {
        VerifyOptions {
            backend: Backend::Euler,
            n_paths,
            seed,
            dt,
            bridge: true,
            eps: 1e-6,
            window: None,
        }
    }

    pub fn wos(eps: f64, n_paths: usize, seed: u64) -> Self {
        VerifyOptions {
            backend: Backend::Wos,
            eps,
            ..Self::euler(1e-3, n_paths, seed)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub backend: Backend,
    pub n_paths: usize,
    pub seed: u64,
    pub ks: KsResult,
    pub exit_time: MeanEstimate,
    pub parseval_etau: f64,
    pub exit_time_ok: bool,
    /// Bootstrap interval for `E[τ^{p/2}]`; Euler only.
    pub moment_p_half: Option<BootstrapCi>,
    pub p: f64,
    pub leakage: f64,
    pub leakage_ok: bool,
    pub censored: usize,
    pub pass: bool,
}

/// Runs the exit sampler from the origin of the artifact's domain and
/// compares `Re(Z_τ)` with `μ`, the mean exit time with `½Σa_n²`, and
/// estimates `E[τ^{p/2}]`.
pub fn verify_embedding(
    artifact: &DomainArtifact,
    spec: &MeasureSpec,
    opts: VerifyOptions,
) -> Result<(EmbeddingReport, ExitSampleSet), SimulationError> {
    let domain = Domain::new(artifact.curve()?, opts.window);
    let origin = Complex64::new(0.0, 0.0);
    let samples = match opts.backend {
        Backend::Euler => {
            let e = EulerOptions::new(opts.dt, opts.n_paths, opts.seed).with_bridge(opts.bridge);
            euler_exit(&domain, origin, e)?
        }
        Backend::Wos => wos_exit(&domain, origin, WosOptions::new(opts.eps, opts.n_paths, opts.seed))?,
    };
    let ks = ks_one_sample(&samples.exit_x(), |x| spec.cdf_pair(x));
    let exit_time = mean_se(&samples.exit_times());
    let parseval_etau = artifact.diagnostics.parseval_etau;
    let exit_time_ok = exit_time.within_3se(parseval_etau);
    let p = artifact.p;
    let moment_p_half = match opts.backend {
        Backend::Euler => Some(moment_estimate(&samples, p / 2.0, opts.seed)?),
        Backend::Wos => None,
    };
    let leakage = samples.leakage();
    let leakage_ok = leakage <= MAX_LEAKAGE;
    let censored = samples.censored();
    let report = EmbeddingReport {
        backend: opts.backend,
        n_paths: opts.n_paths,
        seed: opts.seed,
        ks,
        exit_time,
        parseval_etau,
        exit_time_ok,
        moment_p_half,
        p,
        leakage,
        leakage_ok,
        censored,
        pass: ks.pass && exit_time_ok && leakage_ok && censored == 0,
    };
    Ok((report, samples))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{synthesize, ConstructionConfig};
    use crate::measures::Builtin;

    #[test]
    fn uniform_embedding_small() {
        let spec = MeasureSpec::builtin(Builtin::Uniform { a: -1.0, b: 1.0 }, 4.0).unwrap();
        let art = synthesize(&spec, ConstructionConfig::new(1 << 10, 1 << 12)).unwrap();
        let (r, _) = verify_embedding(&art, &spec, VerifyOptions::euler(1e-3, 3000, 1)).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.moment_p_half.unwrap().estimate.is_finite());
        let (w, _) = verify_embedding(&art, &spec, VerifyOptions::wos(1e-6, 3000, 1)).unwrap();
        assert!(w.pass && w.moment_p_half.is_none(), "{w:?}");
    }
}
