use super::eigen::eigenvalues_hermitian_with;
use super::tensor::{kron, partial_trace_matrix, permute_matrix};
use super::{hermiticity_residual, ComplexMatrix, ComplexVector, Shape, C64};
use crate::{Error, Result, Tolerances};

/// Hermitian, positive semidefinite, unit-trace matrix annotated with its
/// subsystem structure.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    shape: Shape,
}

impl DensityMatrix {
    /// Validates against the default tolerances.
    pub fn new(matrix: ComplexMatrix, shape: Shape) -> Result<Self> {
        Self::with_tolerances(matrix, shape, &Tolerances::default())
    }

    pub fn with_tolerances(matrix: ComplexMatrix, shape: Shape, tol: &Tolerances) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() || matrix.nrows() != shape.total() {
            return Err(Error::mismatch(format!(
                "{}x{} matrix for shape {:?}",
                matrix.nrows(),
                matrix.ncols(),
                shape.dims()
            )));
        }
        if matrix.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NotAState("non-finite entry".into()));
        }
        let herm = hermiticity_residual(&matrix);
        if herm > tol.herm {
            return Err(Error::NotHermitian { residual: herm });
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > tol.trace || tr.im.abs() > tol.trace {
            return Err(Error::NotAState(format!("trace is {tr}")));
        }
        let spectrum = eigenvalues_hermitian_with(&matrix, tol)?;
        if let Some(&min) = spectrum.first() {
            if min < -tol.psd {
                return Err(Error::NotAState(format!("negative eigenvalue {min:e}")));
            }
        }
        Ok(DensityMatrix { matrix, shape })
    }

    /// Wraps a matrix already known to be a state (partial traces,
    /// permutations and tensor products of valid states).
    pub(crate) fn from_parts_unchecked(matrix: ComplexMatrix, shape: Shape) -> Self {
        debug_assert_eq!(matrix.nrows(), shape.total());
        DensityMatrix { matrix, shape }
    }

    /// Maximally mixed state `I/D` over the given subsystems.
    pub fn maximally_mixed(dims: &[usize]) -> Result<Self> {
        let shape = Shape::new(dims.to_vec())?;
        let n = shape.total();
        let m = ComplexMatrix::identity(n, n) * C64::new(1.0 / n as f64, 0.0);
        Ok(DensityMatrix::from_parts_unchecked(m, shape))
    }

    /// `|psi><psi|` for a (normalised here) nonzero vector.
    pub fn pure(psi: &ComplexVector, shape: Shape) -> Result<Self> {
        if psi.len() != shape.total() {
            return Err(Error::mismatch(format!(
                "vector of length {} for shape {:?}",
                psi.len(),
                shape.dims()
            )));
        }
        let norm = psi.norm();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::NotAState("zero or non-finite state vector".into()));
        }
        let v = psi / C64::new(norm, 0.0);
        Ok(DensityMatrix::from_parts_unchecked(&v * v.adjoint(), shape))
    }

    /// Computational basis projector `|k><k|` on a single system.
    pub fn basis(d: usize, k: usize) -> Result<Self> {
        if k >= d {
            return Err(Error::arg(format!("basis index {k} out of range for dimension {d}")));
        }
        let mut m = ComplexMatrix::zeros(d, d);
        m[(k, k)] = C64::new(1.0, 0.0);
        Ok(DensityMatrix::from_parts_unchecked(m, Shape::new(vec![d])?))
    }

    /// Normalised maximally entangled state `(1/d) Σ |ii><jj|` on two qudits.
    pub fn max_entangled(d: usize) -> Result<Self> {
        let shape = Shape::new(vec![d, d])?;
        let mut psi = ComplexVector::zeros(d * d);
        for i in 0..d {
            psi[i * d + i] = C64::new(1.0, 0.0);
        }
        DensityMatrix::pure(&psi, shape)
    }

    /// GHZ-type state `(1/√d) Σ_i |i…i>` on `parties` qudits.
    pub fn ghz(d: usize, parties: usize) -> Result<Self> {
        let shape = Shape::new(vec![d; parties])?;
        let total = shape.total();
        let step = if d > 1 { (total - 1) / (d - 1) } else { 0 };
        let mut psi = ComplexVector::zeros(total);
        for i in 0..d {
            psi[i * step] = C64::new(1.0, 0.0);
        }
        DensityMatrix::pure(&psi, shape)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// Replaces the subsystem annotation; the total dimension must agree.
    pub fn reshaped(self, shape: Shape) -> Result<Self> {
        if shape.total() != self.dim() {
            return Err(Error::mismatch(format!(
                "cannot reshape dimension {} to {:?}",
                self.dim(),
                shape.dims()
            )));
        }
        Ok(DensityMatrix {
            matrix: self.matrix,
            shape,
        })
    }

    /// `self ⊗ other`.
    pub fn tensor(&self, other: &DensityMatrix) -> Result<Self> {
        let m = kron(&self.matrix, &other.matrix)?;
        Ok(DensityMatrix::from_parts_unchecked(m, self.shape.concat(&other.shape)))
    }

    /// Marginal on `keep`; the result lists kept subsystems in their
    /// original order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        let keep = self.shape.validate_subset(keep)?;
        if keep.is_empty() {
            return Err(Error::arg("partial trace must keep at least one subsystem"));
        }
        let m = partial_trace_matrix(&self.matrix, self.shape.dims(), &keep)?;
        Ok(DensityMatrix::from_parts_unchecked(m, self.shape.select(&keep)))
    }

    /// Subsystem `k` of the result is subsystem `order[k]` of `self`.
    pub fn permute(&self, order: &[usize]) -> Result<Self> {
        let m = permute_matrix(&self.matrix, self.shape.dims(), order)?;
        Ok(DensityMatrix::from_parts_unchecked(m, self.shape.select(order)))
    }

    /// Spectrum, ascending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        super::eigenvalues_hermitian(&self.matrix)
    }
}
