//! Where the input's correlations go. Purify the environment with an
//! ancilla R and look at the global pure state: whatever the system loses,
//! `2 ln d − M`, shows up as correlations between the input and E R, and
//! R can learn at most twice that much about the system.

use proctensor::channel::{eta_diagnostics, fredkin_dilation, DilationSpec};
use proctensor::linalg::{identity, DensityMatrix};
use proctensor::process::{haar_unitary, random_density_matrix};

fn show(label: &str, spec: &DilationSpec) -> proctensor::Result<()> {
    let eta = eta_diagnostics(spec)?;
    println!(
        "{label:<22} M={:.5}  M_bar={:.5}  I(in:ER)={:.5}  I(in out:R)={:.5} <= {:.5}",
        eta.markovian,
        eta.complement,
        eta.in_env_ancilla,
        eta.system_ancilla,
        2.0 * eta.complement
    );
    Ok(())
}

fn main() -> proctensor::Result<()> {
    let env = DensityMatrix::maximally_mixed(&[2])?;
    show("no interaction", &DilationSpec::new(2, env, identity(4))?)?;
    for p in [0.5, 1.0] {
        show(&format!("fredkin p={p}"), &fredkin_dilation(2, p)?)?;
    }
    for seed in 0..4u64 {
        let d_env = 2 + (seed as usize % 3);
        let spec = DilationSpec::new(2, random_density_matrix(d_env, seed), haar_unitary(2 * d_env, seed + 100))?;
        show(&format!("random d_env={d_env}"), &spec)?;
    }
    Ok(())
}
