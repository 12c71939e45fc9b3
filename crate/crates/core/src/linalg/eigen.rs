//! Hermitian eigendecomposition.
//!
//! Backed by nalgebra's symmetric eigensolver. Matrices whose sparsity
//! pattern splits into several connected components (common for product
//! states of maximally entangled pairs) are diagonalised block by block;
//! entries that are exactly zero are the only ones treated as absent.

use nalgebra::{DMatrix, SymmetricEigen};

use super::{ComplexMatrix, C64};
use crate::{Error, Result, Tolerances};

/// Max entrywise `|m - m^dagger|`; infinite for non-square input.
pub fn hermiticity_residual(m: &ComplexMatrix) -> f64 {
    if m.nrows() != m.ncols() {
        return f64::INFINITY;
    }
    let n = m.nrows();
    let mut worst = 0.0f64;
    for j in 0..n {
        for i in 0..=j {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

fn check_hermitian(m: &ComplexMatrix, tol: &Tolerances) -> Result<()> {
    let residual = hermiticity_residual(m);
    if residual.is_nan() || residual > tol.herm {
        return Err(Error::NotHermitian { residual });
    }
    Ok(())
}

/// Connected components of the nonzero pattern, each sorted ascending.
fn components(m: &ComplexMatrix) -> Vec<Vec<usize>> {
    let n = m.nrows();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for j in 0..n {
        for i in 0..j {
            if m[(i, j)] != C64::new(0.0, 0.0) || m[(j, i)] != C64::new(0.0, 0.0) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }
    groups
}

fn submatrix(m: &ComplexMatrix, idx: &[usize]) -> ComplexMatrix {
    DMatrix::from_fn(idx.len(), idx.len(), |a, b| m[(idx[a], idx[b])])
}

fn hermitize(m: &ComplexMatrix) -> ComplexMatrix {
    (m + m.adjoint()) * C64::new(0.5, 0.0)
}

/// Real spectrum of a Hermitian matrix, ascending.
pub fn eigenvalues_hermitian(m: &ComplexMatrix) -> Result<Vec<f64>> {
    eigenvalues_hermitian_with(m, &Tolerances::default())
}

pub(crate) fn eigenvalues_hermitian_with(m: &ComplexMatrix, tol: &Tolerances) -> Result<Vec<f64>> {
    check_hermitian(m, tol)?;
    let mut values = Vec::with_capacity(m.nrows());
    for block in components(m) {
        if block.len() == 1 {
            values.push(m[(block[0], block[0])].re);
            continue;
        }
        let sub = hermitize(&submatrix(m, &block));
        values.extend(sub.symmetric_eigenvalues().iter().copied());
    }
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Eigenpairs of a Hermitian matrix: `m = V diag(values) V^dagger`, with
/// values ascending and columns of `vectors` matching.
#[derive(Debug, Clone)]
pub struct Eigh {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

pub fn eigh(m: &ComplexMatrix) -> Result<Eigh> {
    eigh_with(m, &Tolerances::default())
}

pub(crate) fn eigh_with(m: &ComplexMatrix, tol: &Tolerances) -> Result<Eigh> {
    check_hermitian(m, tol)?;
    let n = m.nrows();
    let mut pairs: Vec<(f64, Vec<(usize, C64)>)> = Vec::with_capacity(n);
    for block in components(m) {
        if block.len() == 1 {
            pairs.push((m[(block[0], block[0])].re, vec![(block[0], C64::new(1.0, 0.0))]));
            continue;
        }
        let eig = SymmetricEigen::new(hermitize(&submatrix(m, &block)));
        for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
            let col = eig.eigenvectors.column(k);
            pairs.push((lambda, block.iter().enumerate().map(|(a, &i)| (i, col[a])).collect()));
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut vectors = ComplexMatrix::zeros(n, n);
    let mut values = Vec::with_capacity(n);
    for (k, (lambda, entries)) in pairs.into_iter().enumerate() {
        values.push(lambda);
        for (i, v) in entries {
            vectors[(i, k)] = v;
        }
    }
    Ok(Eigh { values, vectors })
}
