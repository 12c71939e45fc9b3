//! Input-output correlation of the depolarizing channel as the noise
//! strength goes from 0 (identity) to 1 (fixed output).
//!
//! ```text
//! cargo run --example depolarizing_sweep
//! ```

use proctensor::channel::{depolarizing_choi, input_output_correlation};

fn main() -> proctensor::Result<()> {
    let dims = [2usize, 3, 4];
    print!("{:>5}", "p");
    for d in dims {
        print!("  {:>10}", format!("M (d={d})"));
    }
    println!();
    for k in 0..=10 {
        let p = k as f64 / 10.0;
        print!("{p:>5.2}");
        for d in dims {
            let m = input_output_correlation(&depolarizing_choi(d, p)?)?;
            print!("  {m:>10.6}");
        }
        println!();
    }
    for d in dims {
        println!("2 ln {d} = {:.6}", 2.0 * (d as f64).ln());
    }
    Ok(())
}
