//! Named example processes.

use crate::channel::fredkin_dilation;
use crate::gates;
use crate::linalg::DensityMatrix;
use crate::{Error, Result};

use super::{build_from_circuit, process_shape, CircuitProcessSpec, ProcessTensor};

/// Two qubit steps sharing one Fredkin environment: control qubit in
/// `(1-p)|0><0| + p|1><1|`, target qubit in `I/2`, and the same
/// controlled swap applied at both steps.
pub fn nm_depolarizing_circuit(p: f64) -> Result<CircuitProcessSpec> {
    let dilation = fredkin_dilation(2, p)?;
    let u = dilation.unitary().clone();
    CircuitProcessSpec::new(2, dilation.env_state().clone(), vec![u.clone(), u])
}

pub fn nm_depolarizing_process(p: f64) -> Result<ProcessTensor> {
    build_from_circuit(&nm_depolarizing_circuit(p)?)
}

/// Qubit CNOT (system controls an environment qubit starting in `|0>`)
/// followed by a system–environment SWAP.
pub fn cnot_swap_circuit() -> Result<CircuitProcessSpec> {
    CircuitProcessSpec::new(2, DensityMatrix::basis(2, 0)?, vec![gates::cnot(2), gates::swap(2)])
}

pub fn cnot_swap_process() -> Result<ProcessTensor> {
    build_from_circuit(&cnot_swap_circuit()?)
}

/// Circuit form of the swap chain: SWAP with a `d`-dimensional environment
/// starting in `I/d` at every step, so output `j + 1` returns input `j`.
pub fn swap_chain_circuit(n: usize, d: usize) -> Result<CircuitProcessSpec> {
    CircuitProcessSpec::new(d, DensityMatrix::maximally_mixed(&[d])?, vec![gates::swap(d); n])
}

/// `I/d_{o_1} ⊗ Φ_{i_0 o_2} ⊗ Φ_{i_1 o_3} ⊗ … ⊗ Φ_{i_{n-2} o_n} ⊗ I/d_{i_{n-1}}`,
/// assembled directly as a product state and reordered into slot order.
pub fn swap_chain_process(n: usize, d: usize) -> Result<ProcessTensor> {
    if n < 2 {
        return Err(Error::arg(format!("the swap chain needs n >= 2, got {n}")));
    }
    let mixed = DensityMatrix::maximally_mixed(&[d])?;
    let phi = DensityMatrix::max_entangled(d)?;
    // product subsystem k holds slot `order[k]`
    let mut order = vec![1];
    let mut product = mixed.clone();
    for j in 0..n - 1 {
        product = product.tensor(&phi)?;
        order.push(2 * j);
        order.push(2 * j + 3);
    }
    product = product.tensor(&mixed)?;
    order.push(2 * n - 2);

    let mut inverse = vec![0; order.len()];
    for (k, &slot) in order.iter().enumerate() {
        inverse[slot] = k;
    }
    let state = product.permute(&inverse)?.reshaped(process_shape(n, d)?)?;
    ProcessTensor::new(state, n, d)
}
