use serde::Serialize;

use crate::linalg::entropy::trace_distance_with;
use crate::linalg::DensityMatrix;
use crate::{Error, Result, Tolerances};

/// Residuals of the hierarchy `tr_{o_j}[Υ_{1:j}] = Υ_{1:j-1} ⊗ I/d`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CausalityReport {
    /// `residuals[j - 1]` is the trace distance at level `j`.
    pub residuals: Vec<f64>,
    /// Trace distance between the `i_0` marginal and `I/d`.
    pub base_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CausalityReport {
    /// Largest residual over all levels and the base case.
    pub fn max_residual(&self) -> f64 {
        self.residuals
            .iter()
            .copied()
            .fold(self.base_residual, f64::max)
    }

    /// `(level, residual)` of the highest failing level, if any.
    pub fn worst_violation(&self) -> Option<(usize, f64)> {
        self.residuals
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &r)| !(r <= self.tolerance))
            .map(|(k, &r)| (k + 1, r))
            .or_else(|| (!(self.base_residual <= self.tolerance)).then_some((1, self.base_residual)))
    }
}

/// Checks the causality hierarchy on any state with `2n` slots of dimension
/// `d`, so non-causal states can be diagnosed as well.
pub fn verify_causality(state: &DensityMatrix, n: usize, d: usize, tol: f64) -> Result<CausalityReport> {
    let expected_dims = vec![d; 2 * n];
    if n == 0 || state.shape().dims() != expected_dims.as_slice() {
        return Err(Error::mismatch(format!(
            "state shape {:?} does not have {} slots of dimension {d}",
            state.shape().dims(),
            2 * n
        )));
    }
    let tols = Tolerances::default();
    let mixed = DensityMatrix::maximally_mixed(&[d])?;
    let mut residuals = vec![0.0; n];
    // Υ_{1:j} for the level being checked; `None` means the full state
    let mut current: Option<DensityMatrix> = None;
    for j in (1..=n).rev() {
        let upper = current.as_ref().unwrap_or(state);
        let without_output: Vec<usize> = (0..2 * j - 1).collect();
        let reduced = upper.partial_trace(&without_output)?;
        let expected;
        if j > 1 {
            let earlier: Vec<usize> = (0..2 * j - 2).collect();
            let prev = upper.partial_trace(&earlier)?;
            expected = prev.tensor(&mixed)?;
            current = Some(prev);
        } else {
            expected = mixed.clone();
        }
        residuals[j - 1] = trace_distance_with(&reduced, &expected, &tols)?;
    }
    let base = state.partial_trace(&[0])?;
    let base_residual = trace_distance_with(&base, &mixed, &tols)?;
    let pass = residuals.iter().all(|&r| r <= tol) && base_residual <= tol;
    Ok(CausalityReport {
        residuals,
        base_residual,
        tolerance: tol,
        pass,
    })
}
