//! A controlled swap with a half-mixed environment depolarizes the system.
//! The control qubit picks "do nothing" or "swap with a maximally mixed
//! qubit", so tracing the environment out leaves `ε_p`.

use proctensor::channel::{
    apply_channel, choi_from_dilation, depolarizing_choi, fredkin_dilation, input_output_correlation,
};
use proctensor::linalg::{trace_distance, DensityMatrix};

fn main() -> proctensor::Result<()> {
    println!("{:>5}  {:>14}  {:>10}", "p", "dist to eps_p", "M");
    for p in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let choi = choi_from_dilation(&fredkin_dilation(2, p)?)?;
        let reference = depolarizing_choi(2, p)?;
        let dist = trace_distance(choi.state(), reference.state())?;
        println!("{p:>5.2}  {dist:>14.3e}  {:>10.6}", input_output_correlation(&choi)?);
    }

    // the channel acting on |0><0|
    let choi = choi_from_dilation(&fredkin_dilation(2, 0.5)?)?;
    let out = apply_channel(&choi, &DensityMatrix::basis(2, 0)?)?;
    println!("eps_0.5(|0><0|) diagonal: {:.3} {:.3}", out.matrix()[(0, 0)].re, out.matrix()[(1, 1)].re);
    Ok(())
}
