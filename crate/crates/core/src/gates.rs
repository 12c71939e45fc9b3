//! Fixed unitaries used by the named constructions. Multi-register gates act
//! on their registers in the order listed, left factor slowest.

use crate::linalg::{ComplexMatrix, C64};

fn permutation(dim: usize, image: impl Fn(usize) -> usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim, dim);
    for col in 0..dim {
        m[(image(col), col)] = C64::new(1.0, 0.0);
    }
    m
}

/// `SWAP |a>|b> = |b>|a>` on two registers of dimension `d`.
pub fn swap(d: usize) -> ComplexMatrix {
    permutation(d * d, |idx| {
        let (a, b) = (idx / d, idx % d);
        b * d + a
    })
}

/// Generalised CNOT `|c>|t> -> |c>|t + c mod d>`, control first.
pub fn cnot(d: usize) -> ComplexMatrix {
    permutation(d * d, |idx| {
        let (c, t) = (idx / d, idx % d);
        c * d + (t + c) % d
    })
}

/// Controlled swap on `system(d) ⊗ control(2) ⊗ target(d)`: the control
/// qubit in `|1>` exchanges system and target, `|0>` does nothing.
pub fn fredkin(d: usize) -> ComplexMatrix {
    let dim = d * 2 * d;
    permutation(dim, |idx| {
        let s = idx / (2 * d);
        let c = (idx / d) % 2;
        let t = idx % d;
        if c == 1 {
            t * 2 * d + d + s
        } else {
            idx
        }
    })
}

/// `U_sys ⊗ I_env`.
pub fn local(u: &ComplexMatrix, d_env: usize) -> ComplexMatrix {
    u.kronecker(&ComplexMatrix::identity(d_env, d_env))
}
