//! Index gymnastics on dense multipartite matrices and vectors.

use super::{ComplexMatrix, ComplexVector, DensityMatrix, C64};
use crate::tolerance::checked_product;
use crate::{Error, Result};

/// Kronecker product `a ⊗ b`, left factor slowest-varying.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    checked_product([a.nrows(), b.nrows()])?;
    checked_product([a.ncols(), b.ncols()])?;
    Ok(a.kronecker(b))
}

/// Big-endian strides of `dims`.
fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * dims[k + 1];
    }
    s
}

/// Flat offsets of every joint basis state of the subsystems `subset`
/// (enumerated big-endian in the order given), with all other digits zero.
pub(crate) fn offsets(dims: &[usize], subset: &[usize]) -> Vec<usize> {
    let st = strides(dims);
    let mut out = vec![0usize];
    for &k in subset {
        let mut next = Vec::with_capacity(out.len() * dims[k]);
        for &base in &out {
            for digit in 0..dims[k] {
                next.push(base + digit * st[k]);
            }
        }
        out = next;
    }
    out
}

fn check_square(m: &ComplexMatrix, dims: &[usize]) -> Result<()> {
    let total: usize = dims.iter().product();
    if m.nrows() != total || m.ncols() != total {
        return Err(Error::mismatch(format!(
            "{}x{} matrix does not match subsystem dims {:?}",
            m.nrows(),
            m.ncols(),
            dims
        )));
    }
    Ok(())
}

fn validated(dims: &[usize], subset: &[usize]) -> Result<Vec<usize>> {
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != subset.len() {
        return Err(Error::arg(format!("repeated subsystem index in {subset:?}")));
    }
    if let Some(&k) = sorted.iter().find(|&&k| k >= dims.len()) {
        return Err(Error::arg(format!(
            "subsystem index {k} out of range for {} subsystems",
            dims.len()
        )));
    }
    Ok(sorted)
}

/// Partial trace keeping the subsystems in `keep` (returned in ascending
/// subsystem order).
pub fn partial_trace_matrix(
    m: &ComplexMatrix,
    dims: &[usize],
    keep: &[usize],
) -> Result<ComplexMatrix> {
    check_square(m, dims)?;
    let keep = validated(dims, keep)?;
    let traced: Vec<usize> = (0..dims.len()).filter(|k| !keep.contains(k)).collect();
    let ko = offsets(dims, &keep);
    let to = offsets(dims, &traced);
    let dk = ko.len();
    let out = ComplexMatrix::from_fn(dk, dk, |a, b| {
        let (ra, rb) = (ko[a], ko[b]);
        to.iter()
            .map(|&t| m[(ra + t, rb + t)])
            .fold(C64::new(0.0, 0.0), |acc, x| acc + x)
    });
    Ok(out)
}

/// Reorders subsystems: subsystem `k` of the result is subsystem `order[k]`
/// of the input.
pub fn permute_matrix(m: &ComplexMatrix, dims: &[usize], order: &[usize]) -> Result<ComplexMatrix> {
    check_square(m, dims)?;
    if order.len() != dims.len() || validated(dims, order)?.len() != dims.len() {
        return Err(Error::arg(format!(
            "{order:?} is not a permutation of {} subsystems",
            dims.len()
        )));
    }
    let off = offsets(dims, order);
    let n = off.len();
    Ok(ComplexMatrix::from_fn(n, n, |a, b| m[(off[a], off[b])]))
}

/// Transpose in the computational basis of the subsystems in `subset` only.
pub fn partial_transpose_matrix(
    m: &ComplexMatrix,
    dims: &[usize],
    subset: &[usize],
) -> Result<ComplexMatrix> {
    check_square(m, dims)?;
    let subset = validated(dims, subset)?;
    let rest: Vec<usize> = (0..dims.len()).filter(|k| !subset.contains(k)).collect();
    let so = offsets(dims, &subset);
    let ro = offsets(dims, &rest);
    let mut out = m.clone();
    for &sa in &so {
        for &sb in &so {
            for &cx in &ro {
                for &cy in &ro {
                    out[(sa + cx, sb + cy)] = m[(sb + cx, sa + cy)];
                }
            }
        }
    }
    Ok(out)
}

/// Partial transpose of a state over `subset`. The result is Hermitian but
/// in general not positive, hence a bare matrix.
pub fn partial_transpose(rho: &DensityMatrix, subset: &[usize]) -> Result<ComplexMatrix> {
    partial_transpose_matrix(rho.matrix(), rho.shape().dims(), subset)
}

/// Applies `op` to the subsystems `targets` of a state vector in place. The
/// operator acts on `targets[0] ⊗ targets[1] ⊗ …` in that order.
pub fn apply_on_subsystems(
    psi: &mut ComplexVector,
    dims: &[usize],
    targets: &[usize],
    op: &ComplexMatrix,
) -> Result<()> {
    let total: usize = dims.iter().product();
    if psi.len() != total {
        return Err(Error::mismatch(format!(
            "vector of length {} does not match dims {:?}",
            psi.len(),
            dims
        )));
    }
    if validated(dims, targets)?.len() != targets.len() {
        return Err(Error::arg("repeated target subsystem"));
    }
    let rest: Vec<usize> = (0..dims.len()).filter(|k| !targets.contains(k)).collect();
    let to = offsets(dims, targets);
    let ro = offsets(dims, &rest);
    if op.nrows() != to.len() || op.ncols() != to.len() {
        return Err(Error::mismatch(format!(
            "{}x{} operator on subsystems of joint dimension {}",
            op.nrows(),
            op.ncols(),
            to.len()
        )));
    }
    let mut local = ComplexVector::zeros(to.len());
    for &r in &ro {
        for (a, &t) in to.iter().enumerate() {
            local[a] = psi[r + t];
        }
        let updated = op * &local;
        for (a, &t) in to.iter().enumerate() {
            psi[r + t] = updated[a];
        }
    }
    Ok(())
}

/// Frobenius norm of `U U^dagger - I`.
pub fn unitarity_residual(u: &ComplexMatrix) -> f64 {
    if u.nrows() != u.ncols() {
        return f64::INFINITY;
    }
    let n = u.nrows();
    (u * u.adjoint() - ComplexMatrix::identity(n, n)).norm()
}
