//! Entropic functionals. All logarithms are natural; results are in nats.
//! Entropies are evaluated from spectra only, with `0 ln 0 = 0`.

use super::eigen::{eigenvalues_hermitian_with, eigh_with};
use super::{DensityMatrix, C64};
use crate::{Error, Result, Tolerances};

/// `-Σ λ ln λ` over a spectrum. Eigenvalues in `(-tol.psd, 0]` count as
/// zero; anything more negative means the input was not a state.
pub fn entropy_from_spectrum(values: &[f64], tol: &Tolerances) -> Result<f64> {
    let mut s = 0.0;
    for &lambda in values {
        if lambda < -tol.psd {
            return Err(Error::NotAState(format!("negative eigenvalue {lambda:e}")));
        }
        if lambda > 0.0 {
            s -= lambda * lambda.ln();
        }
    }
    Ok(s.max(0.0))
}

/// Von Neumann entropy `S(ρ)` in nats.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    entropy_with(rho, &Tolerances::default())
}

pub(crate) fn entropy_with(rho: &DensityMatrix, tol: &Tolerances) -> Result<f64> {
    let values = eigenvalues_hermitian_with(rho.matrix(), tol)?;
    entropy_from_spectrum(&values, tol)
}

/// Outcome of a relative-entropy evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RelativeEntropy {
    Finite(f64),
    /// `ρ` carries weight outside the support of `σ`.
    Infinite { leaked_weight: f64 },
}

impl RelativeEntropy {
    pub fn finite(self) -> Option<f64> {
        match self {
            RelativeEntropy::Finite(v) => Some(v),
            RelativeEntropy::Infinite { .. } => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, RelativeEntropy::Infinite { .. })
    }
}

/// `S(ρ‖σ) = tr[ρ (ln ρ − ln σ)]`, with `ln σ` taken on the support of `σ`.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<RelativeEntropy> {
    relative_entropy_with(rho, sigma, &Tolerances::default())
}

pub(crate) fn relative_entropy_with(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    tol: &Tolerances,
) -> Result<RelativeEntropy> {
    if rho.dim() != sigma.dim() {
        return Err(Error::mismatch(format!(
            "relative entropy between dimensions {} and {}",
            rho.dim(),
            sigma.dim()
        )));
    }
    let neg_entropy = -entropy_with(rho, tol)?;
    let eig = eigh_with(sigma.matrix(), tol)?;
    let rho_v = rho.matrix() * &eig.vectors;
    let mut cross = 0.0;
    let mut leaked = 0.0;
    for (k, &mu) in eig.values.iter().enumerate() {
        let weight: f64 = eig
            .vectors
            .column(k)
            .iter()
            .zip(rho_v.column(k).iter())
            .map(|(v, rv)| v.conj() * rv)
            .fold(C64::new(0.0, 0.0), |acc, x| acc + x)
            .re;
        if mu > tol.psd {
            cross += weight * mu.ln();
        } else {
            leaked += weight;
        }
    }
    if leaked > tol.supp {
        return Ok(RelativeEntropy::Infinite {
            leaked_weight: leaked,
        });
    }
    Ok(RelativeEntropy::Finite(neg_entropy - cross))
}

fn check_partition(rho: &DensityMatrix, partition: &[Vec<usize>]) -> Result<()> {
    let n = rho.shape().len();
    let mut seen = vec![false; n];
    for block in partition {
        if block.is_empty() {
            return Err(Error::arg("empty block in partition"));
        }
        for &k in block {
            if k >= n {
                return Err(Error::arg(format!("subsystem {k} out of range for {n} subsystems")));
            }
            if std::mem::replace(&mut seen[k], true) {
                return Err(Error::arg(format!("subsystem {k} appears in two blocks")));
            }
        }
    }
    if let Some(k) = seen.iter().position(|s| !s) {
        return Err(Error::arg(format!("subsystem {k} not covered by the partition")));
    }
    Ok(())
}

/// Multipartite mutual information `Σ_b S(ρ_b) − S(ρ)` across the blocks of
/// `partition`, which must be disjoint and cover every subsystem.
pub fn mutual_information(rho: &DensityMatrix, partition: &[Vec<usize>]) -> Result<f64> {
    mutual_information_with(rho, partition, &Tolerances::default())
}

pub(crate) fn mutual_information_with(
    rho: &DensityMatrix,
    partition: &[Vec<usize>],
    tol: &Tolerances,
) -> Result<f64> {
    check_partition(rho, partition)?;
    let mut total = -entropy_with(rho, tol)?;
    for block in partition {
        total += entropy_with(&rho.partial_trace(block)?, tol)?;
    }
    Ok(total)
}

/// `⊗_b ρ_b` over the blocks of `partition`, returned in the subsystem
/// order of `rho`.
pub fn product_of_marginals(rho: &DensityMatrix, partition: &[Vec<usize>]) -> Result<DensityMatrix> {
    check_partition(rho, partition)?;
    let mut order: Vec<usize> = Vec::with_capacity(rho.shape().len());
    let mut product: Option<DensityMatrix> = None;
    for block in partition {
        let mut sorted = block.clone();
        sorted.sort_unstable();
        let marginal = rho.partial_trace(&sorted)?;
        order.extend_from_slice(&sorted);
        product = Some(match product {
            None => marginal,
            Some(acc) => acc.tensor(&marginal)?,
        });
    }
    let product = product.expect("partition is nonempty after validation");
    // product subsystem k is original subsystem order[k]; invert
    let mut inverse = vec![0; order.len()];
    for (k, &orig) in order.iter().enumerate() {
        inverse[orig] = k;
    }
    product.permute(&inverse)
}

/// `½‖a − b‖₁`.
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    trace_distance_with(a, b, &Tolerances::default())
}

pub(crate) fn trace_distance_with(
    a: &DensityMatrix,
    b: &DensityMatrix,
    tol: &Tolerances,
) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::mismatch(format!(
            "trace distance between dimensions {} and {}",
            a.dim(),
            b.dim()
        )));
    }
    let diff = a.matrix() - b.matrix();
    let values = eigenvalues_hermitian_with(&diff, tol)?;
    Ok(0.5 * values.iter().map(|v| v.abs()).sum::<f64>())
}
