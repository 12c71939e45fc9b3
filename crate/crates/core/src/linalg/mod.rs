//! Dense complex linear algebra over multipartite states.
//!
//! All tensor products use a big-endian index convention: in `A ⊗ B` the
//! index of the left factor varies slowest, so entry `(i_a·d_b + i_b,
//! j_a·d_b + j_b)` equals `A[i_a, j_a]·B[i_b, j_b]`. Every multipartite
//! routine here (partial traces, permutations, partial transposes, gate
//! application on state vectors) follows that convention.

mod density;
pub(crate) mod eigen;
pub(crate) mod entropy;
mod shape;
mod tensor;

pub use density::DensityMatrix;
pub use eigen::{eigenvalues_hermitian, eigh, hermiticity_residual, Eigh};
pub use entropy::{
    entropy_from_spectrum, mutual_information, product_of_marginals, relative_entropy,
    trace_distance, von_neumann_entropy, RelativeEntropy,
};
pub use shape::Shape;
pub use tensor::{
    apply_on_subsystems, kron, partial_trace_matrix, partial_transpose, partial_transpose_matrix,
    permute_matrix, unitarity_residual,
};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Complex scalar used throughout.
pub type C64 = Complex64;
/// Dense complex matrix.
pub type ComplexMatrix = DMatrix<C64>;
/// Dense complex column vector.
pub type ComplexVector = DVector<C64>;

/// `n × n` identity.
pub fn identity(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n, n)
}

/// Real diagonal matrix.
pub fn diag(values: &[f64]) -> ComplexMatrix {
    let n = values.len();
    ComplexMatrix::from_fn(n, n, |i, j| {
        if i == j {
            C64::new(values[i], 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}
