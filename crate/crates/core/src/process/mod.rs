//! n-step process tensors.
//!
//! The Choi state of an n-step process lives on 2n slots ordered
//! `(i_0, o_1, i_1, o_2, …, i_{n-1}, o_n)`; slot `i_{j-1}` is the input of
//! step `j` and `o_j` its output. Every slot has the same dimension `d`.

mod causality;
mod circuit;
mod named;
mod random;

pub use causality::{verify_causality, CausalityReport};
pub use circuit::{build_from_circuit, build_from_circuit_with, CircuitProcessSpec};
pub use named::{
    cnot_swap_circuit, cnot_swap_process, nm_depolarizing_circuit, nm_depolarizing_process,
    swap_chain_circuit, swap_chain_process,
};
pub use random::{
    haar_unitary, haar_unitary_with, random_circuit_spec, random_density_matrix, random_process,
    random_pure_state, EnvInit, RandomSpec,
};

use crate::linalg::{DensityMatrix, Shape};
use crate::{Error, Result, Tolerances};

/// Slot index of the input `i_j` (0-based step input), `0 ≤ j < n`.
pub fn input_slot(j: usize) -> usize {
    2 * j
}

/// Slot index of the output `o_j`, `1 ≤ j ≤ n`.
pub fn output_slot(j: usize) -> usize {
    debug_assert!(j >= 1);
    2 * j - 1
}

/// `["i0", "o1", "i1", "o2", …]` for `n` steps.
pub fn slot_labels(n: usize) -> Vec<String> {
    (0..n)
        .flat_map(|j| [format!("i{j}"), format!("o{}", j + 1)])
        .collect()
}

/// Shape of an n-step Choi state with uniform slot dimension `d`.
pub fn process_shape(n: usize, d: usize) -> Result<Shape> {
    if n == 0 {
        return Err(Error::arg("a process needs at least one step"));
    }
    if d < 2 {
        return Err(Error::arg(format!("system dimension {d} < 2")));
    }
    Shape::new(vec![d; 2 * n])?.with_labels(slot_labels(n))
}

/// Causality-verified Choi state of an n-step process tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct ProcessTensor {
    state: DensityMatrix,
    n: usize,
    d: usize,
    causality: CausalityReport,
}

impl ProcessTensor {
    /// Wraps `state`, checking the whole causality hierarchy at the default
    /// causal tolerance.
    pub fn new(state: DensityMatrix, n: usize, d: usize) -> Result<Self> {
        Self::with_tolerances(state, n, d, &Tolerances::default())
    }

    pub fn with_tolerances(state: DensityMatrix, n: usize, d: usize, tol: &Tolerances) -> Result<Self> {
        let shape = process_shape(n, d)?;
        if state.shape().dims() != shape.dims() {
            return Err(Error::mismatch(format!(
                "state shape {:?} is not that of a {n}-step process with d = {d}",
                state.shape().dims()
            )));
        }
        let state = state.reshaped(shape)?;
        let causality = verify_causality(&state, n, d, tol.causal)?;
        if let Some((level, residual)) = causality.worst_violation() {
            return Err(Error::NotCausal { level, residual });
        }
        Ok(ProcessTensor {
            state,
            n,
            d,
            causality,
        })
    }

    pub fn state(&self) -> &DensityMatrix {
        &self.state
    }

    pub fn into_state(self) -> DensityMatrix {
        self.state
    }

    /// Causality residuals recorded at construction.
    pub fn causality(&self) -> &CausalityReport {
        &self.causality
    }

    pub fn steps(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// Marginal on `(i_{j-1}, o_j)`, the Choi state of step `j` (1-based).
    pub fn step_marginal(&self, j: usize) -> Result<DensityMatrix> {
        if j == 0 || j > self.n {
            return Err(Error::arg(format!("step {j} outside 1..={}", self.n)));
        }
        self.state.partial_trace(&[input_slot(j - 1), output_slot(j)])
    }

    /// `Υ_{1:j}`: marginal on the first `j` steps.
    pub fn prefix(&self, j: usize) -> Result<DensityMatrix> {
        if j == 0 || j > self.n {
            return Err(Error::arg(format!("prefix length {j} outside 1..={}", self.n)));
        }
        let keep: Vec<usize> = (0..2 * j).collect();
        self.state.partial_trace(&keep)
    }
}
