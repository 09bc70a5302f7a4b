//! Build the domain of the uniform law on (-1, 1) and check its exit law with
//! both simulation backends.

use conformal_skorohod::construction::{synthesize, ConstructionConfig};
use conformal_skorohod::measures::{Builtin, MeasureSpec};
use conformal_skorohod::simulate::{verify_embedding, VerifyOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = MeasureSpec::builtin(Builtin::Uniform { a: -1.0, b: 1.0 }, 4.0)?;
    let art = synthesize(&spec, ConstructionConfig::new(1 << 11, 1 << 13))?;
    for opts in [VerifyOptions::euler(1e-3, 20_000, 7), VerifyOptions::wos(1e-6, 20_000, 7)] {
        let (r, _) = verify_embedding(&art, &spec, opts)?;
        println!(
            "{:5}  KS {:.4} (crit {:.4})  E[tau] {:.4} ± {:.4} vs {:.4}  pass {}",
            r.backend.name(),
            r.ks.statistic,
            r.ks.critical_99,
            r.exit_time.mean,
            r.exit_time.std_error,
            r.parseval_etau,
            r.pass
        );
        if let Some(m) = r.moment_p_half {
            println!("       E[tau^{}] in [{:.4}, {:.4}]", r.p / 2.0, m.lower, m.upper);
        }
    }
    Ok(())
}
