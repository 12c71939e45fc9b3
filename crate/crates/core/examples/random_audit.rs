//! Audits every bound on seeded Haar-random processes and reports the
//! tightest slack seen. Usage: `random_audit [samples] [n] [d_env]`.

use proctensor::metrics::{audit_bounds, correlation_report, implication_checks};
use proctensor::process::{random_process, RandomSpec};

fn main() -> proctensor::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let samples = args.first().copied().unwrap_or(200);
    let n = args.get(1).copied().unwrap_or(2);
    let d_env = args.get(2).copied().unwrap_or(4);

    let mut tightest = f64::INFINITY;
    let mut failures = 0;
    let mut implication_violations = 0;
    for seed in 0..samples as u64 {
        let r = correlation_report(&random_process(&RandomSpec::new(n, 2, d_env, seed))?)?;
        let audit = audit_bounds(&r);
        tightest = tightest.min(audit.min_slack());
        failures += usize::from(!audit.pass);
        if n == 2 {
            for eps in [0.01, 0.1, 0.5] {
                implication_violations += implication_checks(&r, eps)?.violations();
            }
        }
    }
    println!("{samples} processes, n={n}, d=2, d_env={d_env}");
    println!("tightest slack {tightest:.6}, failing audits {failures}");
    if n == 2 {
        println!("implication violations {implication_violations}");
    }
    Ok(())
}
