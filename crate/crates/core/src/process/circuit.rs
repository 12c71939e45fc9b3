use crate::channel::spectral_purification;
use crate::linalg::{
    apply_on_subsystems, unitarity_residual, ComplexMatrix, ComplexVector, DensityMatrix, C64,
};
use crate::tolerance::checked_product;
use crate::{Error, Result, Tolerances};

use super::{output_slot, process_shape, ProcessTensor};

/// A multitime dilation: one persistent environment starting in `σ_E`,
/// and a unitary on `system ⊗ environment` per step.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitProcessSpec {
    d: usize,
    env_state: DensityMatrix,
    unitaries: Vec<ComplexMatrix>,
}

impl CircuitProcessSpec {
    pub fn new(d: usize, env_state: DensityMatrix, unitaries: Vec<ComplexMatrix>) -> Result<Self> {
        Self::with_tolerances(d, env_state, unitaries, &Tolerances::default())
    }

    pub fn with_tolerances(
        d: usize,
        env_state: DensityMatrix,
        unitaries: Vec<ComplexMatrix>,
        tol: &Tolerances,
    ) -> Result<Self> {
        if d < 2 {
            return Err(Error::arg(format!("system dimension {d} < 2")));
        }
        if unitaries.is_empty() {
            return Err(Error::arg("a circuit needs at least one step"));
        }
        let joint = d * env_state.dim();
        for (k, u) in unitaries.iter().enumerate() {
            if u.nrows() != joint || u.ncols() != joint {
                return Err(Error::mismatch(format!(
                    "unitary {k} is {}x{}, expected {joint}x{joint}",
                    u.nrows(),
                    u.ncols()
                )));
            }
            let residual = unitarity_residual(u);
            if !(residual <= tol.eig) {
                return Err(Error::NotUnitary { residual });
            }
        }
        Ok(CircuitProcessSpec {
            d,
            env_state,
            unitaries,
        })
    }

    pub fn steps(&self) -> usize {
        self.unitaries.len()
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn env_dim(&self) -> usize {
        self.env_state.dim()
    }

    pub fn env_state(&self) -> &DensityMatrix {
        &self.env_state
    }

    pub fn unitaries(&self) -> &[ComplexMatrix] {
        &self.unitaries
    }
}

/// Simulates the Choi-state circuit. Each step `j` gets a fresh maximally
/// entangled pair: one half is stored as slot `i_{j-1}`, the other interacts
/// with the environment through `U_j` and is stored as slot `o_j`. The
/// environment (purified once) is traced out only after the last step.
pub fn build_from_circuit(spec: &CircuitProcessSpec) -> Result<ProcessTensor> {
    build_from_circuit_with(spec, &Tolerances::default())
}

pub fn build_from_circuit_with(spec: &CircuitProcessSpec, tol: &Tolerances) -> Result<ProcessTensor> {
    let n = spec.steps();
    let d = spec.d;
    let d_env = spec.env_dim();
    let (env_psi, rank) = spectral_purification(&spec.env_state, tol)?;

    let sys_dim = checked_product(std::iter::repeat_n(d, 2 * n))?;
    checked_product([sys_dim, d_env, rank])?;

    let mut dims = vec![d; 2 * n];
    dims.push(d_env);
    dims.push(rank);
    let env_slot = 2 * n;

    let mut pair = ComplexVector::zeros(d * d);
    for i in 0..d {
        pair[i * d + i] = C64::new(1.0 / (d as f64).sqrt(), 0.0);
    }
    let mut psi = ComplexVector::from_element(1, C64::new(1.0, 0.0));
    for _ in 0..n {
        psi = psi.kronecker(&pair);
    }
    psi = psi.kronecker(&env_psi);

    for (k, u) in spec.unitaries.iter().enumerate() {
        apply_on_subsystems(&mut psi, &dims, &[output_slot(k + 1), env_slot], u)?;
    }

    // trace out E ⊗ R: ρ = V V† with V[s, e] = ψ[s · d_er + e]
    let d_er = d_env * rank;
    let v = ComplexMatrix::from_row_slice(sys_dim, d_er, psi.as_slice());
    let rho = &v * v.adjoint();
    let state = DensityMatrix::from_parts_unchecked(rho, process_shape(n, d)?);
    ProcessTensor::with_tolerances(state, n, d, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{choi_from_dilation, fredkin_dilation, DilationSpec};
    use crate::process::haar_unitary;

    #[test]
    fn single_step_matches_choi_from_dilation() {
        for seed in 0..5 {
            let u = haar_unitary(6, seed);
            let env = crate::process::random_density_matrix(3, seed + 100);
            let dilation = DilationSpec::new(2, env.clone(), u.clone()).unwrap();
            let choi = choi_from_dilation(&dilation).unwrap();
            let pt = build_from_circuit(&CircuitProcessSpec::new(2, env, vec![u]).unwrap()).unwrap();
            assert!((pt.state().matrix() - choi.state().matrix()).norm() < 1e-12);
        }
        let f = fredkin_dilation(2, 0.4).unwrap();
        let choi = choi_from_dilation(&f).unwrap();
        let pt = build_from_circuit(
            &CircuitProcessSpec::new(2, f.env_state().clone(), vec![f.unitary().clone()]).unwrap(),
        )
        .unwrap();
        assert!((pt.state().matrix() - choi.state().matrix()).norm() < 1e-12);
    }

    #[test]
    fn spec_rejects_wrong_sizes() {
        let env = DensityMatrix::maximally_mixed(&[2]).unwrap();
        assert!(CircuitProcessSpec::new(2, env.clone(), vec![]).is_err());
        assert!(CircuitProcessSpec::new(2, env.clone(), vec![ComplexMatrix::identity(2, 2)]).is_err());
        let mut bad = ComplexMatrix::identity(4, 4);
        bad[(1, 2)] = C64::new(0.1, 0.0);
        assert!(matches!(
            CircuitProcessSpec::new(2, env, vec![bad]),
            Err(Error::NotUnitary { .. })
        ));
    }
}
