//! Not every state on the 2n slots is a process. Causal processes pass the
//! trace hierarchy; a state that correlates an early slot with a later
//! input does not, even though its correlations look impressive.
//! Also round-trips a process through a spec file and a Choi file.

use proctensor::io::{read_choi, write_choi, ProcessSpecFile};
use proctensor::linalg::{ComplexVector, DensityMatrix, Shape, C64};
use proctensor::metrics::{audit_bounds, correlation_report_for_state};
use proctensor::process::{build_from_circuit, cnot_swap_circuit, verify_causality};
use proctensor::Tolerances;

fn main() -> proctensor::Result<()> {
    let tol = Tolerances::default();

    // Φ between (i0 o1) and (i1 o2)
    let mut psi = ComplexVector::zeros(16);
    for k in 0..4 {
        psi[k * 4 + k] = C64::new(1.0, 0.0);
    }
    let crossed = DensityMatrix::pure(&psi, Shape::new(vec![2; 4])?)?;
    let report = verify_causality(&crossed, 2, 2, tol.causal)?;
    println!("crossed state: residuals {:?}, causal {}", report.residuals, report.pass);
    let r = correlation_report_for_state(&crossed, 2, 2)?;
    let audit = audit_bounds(&r);
    println!(
        "  N = {:.4} (> 2 ln 2 = {:.4}), prop1 slack {:.4}, thm1 slack {:.4}",
        r.non_markovian,
        2.0 * 2f64.ln(),
        audit.prop1_min(),
        audit.thm1_slack
    );

    let spec = cnot_swap_circuit()?;
    let json = ProcessSpecFile::from_circuit(&spec).to_json();
    let rebuilt = ProcessSpecFile::parse(&json)?.to_circuit(&tol)?;
    let pt = build_from_circuit(&rebuilt)?;
    println!("cnot-swap from spec: residuals {:?}", pt.causality().residuals);

    let text = write_choi(pt.state(), 2, 2)?;
    println!("choi file header: {}", text.lines().next().unwrap_or_default());
    let (state, n, d) = read_choi(&text, &tol)?;
    println!("read back n={n} d={d}, identical: {}", state.matrix() == pt.state().matrix());
    Ok(())
}
