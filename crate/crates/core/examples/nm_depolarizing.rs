//! Two depolarizing steps that share their environment. Each step alone is
//! `ε_p`, but at p = 1 the first input's state comes back at the second
//! output, so the correlations move from M to N.
//!
//! Run with an argument to write the full CSV instead:
//!
//! ```text
//! cargo run --example nm_depolarizing -- fig6.csv
//! ```

use proctensor::cli::{run, Command, Figure, RunConfig};
use proctensor::metrics::correlation_report;
use proctensor::process::nm_depolarizing_process;

fn main() -> proctensor::Result<()> {
    if let Some(path) = std::env::args().nth(1) {
        let mut cfg = RunConfig::new(Command::EmitFigure(Figure::Fig6));
        cfg.output = Some(path.into());
        std::process::exit(proctensor::cli::execute(&cfg));
    }
    println!("{:>5}  {:>9}  {:>9}  {:>9}  {:>9}", "p", "M1", "M2", "N", "I");
    for k in 0..=10 {
        let p = k as f64 / 10.0;
        let r = correlation_report(&nm_depolarizing_process(p)?)?;
        println!(
            "{p:>5.2}  {:>9.6}  {:>9.6}  {:>9.6}  {:>9.6}",
            r.markovian[0], r.markovian[1], r.non_markovian, r.total
        );
    }
    let csv = run(&{
        let mut cfg = RunConfig::new(Command::EmitFigure(Figure::Fig6));
        cfg.grid = 3;
        cfg
    })?;
    print!("\n{}", csv.report);
    Ok(())
}
