//! Single-step channels, represented canonically by their normalised Choi
//! state `Υ = (I ⊗ ε)Φ` on `in ⊗ out`.

use crate::gates;
use crate::linalg::entropy::mutual_information_with;
use crate::linalg::{
    eigh, kron, partial_trace_matrix, partial_transpose_matrix, trace_distance,
    unitarity_residual, ComplexMatrix, ComplexVector, DensityMatrix, Shape, C64,
};
use crate::{Error, Result, Tolerances};

/// Normalised Choi state of a channel `in -> out`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelChoi {
    state: DensityMatrix,
    d_in: usize,
    d_out: usize,
}

impl ChannelChoi {
    /// Accepts a bipartite state whose `in` marginal is maximally mixed.
    pub fn new(state: DensityMatrix) -> Result<Self> {
        Self::with_tolerances(state, &Tolerances::default())
    }

    pub fn with_tolerances(state: DensityMatrix, tol: &Tolerances) -> Result<Self> {
        let dims = state.shape().dims().to_vec();
        if dims.len() != 2 {
            return Err(Error::arg(format!(
                "a channel Choi state has two subsystems, got {}",
                dims.len()
            )));
        }
        let marginal = state.partial_trace(&[0])?;
        let residual = trace_distance(&marginal, &DensityMatrix::maximally_mixed(&[dims[0]])?)?;
        if residual > tol.eig {
            return Err(Error::NotCausal { level: 1, residual });
        }
        Ok(ChannelChoi {
            state,
            d_in: dims[0],
            d_out: dims[1],
        })
    }

    pub fn state(&self) -> &DensityMatrix {
        &self.state
    }

    pub fn into_state(self) -> DensityMatrix {
        self.state
    }

    pub fn d_in(&self) -> usize {
        self.d_in
    }

    pub fn d_out(&self) -> usize {
        self.d_out
    }
}

/// Stinespring data: `ε(ρ) = tr_E[U (ρ ⊗ σ_E) U†]`, system register first.
#[derive(Debug, Clone, PartialEq)]
pub struct DilationSpec {
    d_sys: usize,
    env_state: DensityMatrix,
    unitary: ComplexMatrix,
}

impl DilationSpec {
    pub fn new(d_sys: usize, env_state: DensityMatrix, unitary: ComplexMatrix) -> Result<Self> {
        Self::with_tolerances(d_sys, env_state, unitary, &Tolerances::default())
    }

    pub fn with_tolerances(
        d_sys: usize,
        env_state: DensityMatrix,
        unitary: ComplexMatrix,
        tol: &Tolerances,
    ) -> Result<Self> {
        if d_sys < 2 {
            return Err(Error::arg(format!("system dimension {d_sys} < 2")));
        }
        let joint = d_sys * env_state.dim();
        if unitary.nrows() != joint || unitary.ncols() != joint {
            return Err(Error::mismatch(format!(
                "{}x{} unitary for system {} ⊗ environment {}",
                unitary.nrows(),
                unitary.ncols(),
                d_sys,
                env_state.dim()
            )));
        }
        let residual = unitarity_residual(&unitary);
        if !(residual <= tol.eig) {
            return Err(Error::NotUnitary { residual });
        }
        Ok(DilationSpec {
            d_sys,
            env_state,
            unitary,
        })
    }

    pub fn d_sys(&self) -> usize {
        self.d_sys
    }

    pub fn d_env(&self) -> usize {
        self.env_state.dim()
    }

    pub fn env_state(&self) -> &DensityMatrix {
        &self.env_state
    }

    pub fn unitary(&self) -> &ComplexMatrix {
        &self.unitary
    }

    /// `tr_E[U (x ⊗ σ_E) U†]` for an arbitrary (not necessarily positive)
    /// operator `x` on the system.
    fn evolve_operator(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        let joint = kron(x, self.env_state.matrix())?;
        let evolved = &self.unitary * joint * self.unitary.adjoint();
        partial_trace_matrix(&evolved, &[self.d_sys, self.d_env()], &[0])
    }

    /// Output of the dilated channel on `rho`.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.d_sys {
            return Err(Error::mismatch(format!(
                "state of dimension {} into a channel on dimension {}",
                rho.dim(),
                self.d_sys
            )));
        }
        let out = self.evolve_operator(rho.matrix())?;
        Ok(DensityMatrix::from_parts_unchecked(out, Shape::single(self.d_sys)))
    }
}

/// Controlled-swap dilation of the depolarizing channel: environment is a
/// control qubit in `(1-p)|0><0| + p|1><1|` followed by a target qudit in
/// `I/d`; the control in `|1>` swaps system and target.
pub fn fredkin_dilation(d: usize, p: f64) -> Result<DilationSpec> {
    check_probability(p)?;
    let control = DensityMatrix::new(
        crate::linalg::diag(&[1.0 - p, p]),
        Shape::single(2),
    )?;
    let env = control.tensor(&DensityMatrix::maximally_mixed(&[d])?)?;
    DilationSpec::new(d, env, gates::fredkin(d))
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::arg(format!("p = {p} outside [0, 1]")));
    }
    Ok(())
}

/// Choi state of `ε_p(ρ) = p I/d + (1 - p) ρ`:
/// `p (I/d ⊗ I/d) + (1 - p) Φ`.
pub fn depolarizing_choi(d: usize, p: f64) -> Result<ChannelChoi> {
    check_probability(p)?;
    if d < 2 {
        return Err(Error::arg(format!("dimension {d} < 2")));
    }
    let phi = DensityMatrix::max_entangled(d)?;
    let mixed = DensityMatrix::maximally_mixed(&[d, d])?;
    let m = mixed.matrix() * C64::new(p, 0.0) + phi.matrix() * C64::new(1.0 - p, 0.0);
    let state = DensityMatrix::new(m, Shape::new(vec![d, d])?)?;
    ChannelChoi::new(state)
}

/// `Υ = (1/d) Σ_ij |i><j| ⊗ ε(|i><j|)` for the dilated channel.
pub fn choi_from_dilation(spec: &DilationSpec) -> Result<ChannelChoi> {
    let d = spec.d_sys;
    let mut choi = ComplexMatrix::zeros(d * d, d * d);
    let scale = C64::new(1.0 / d as f64, 0.0);
    for i in 0..d {
        for j in 0..d {
            let mut e = ComplexMatrix::zeros(d, d);
            e[(i, j)] = C64::new(1.0, 0.0);
            let out = spec.evolve_operator(&e)? * scale;
            for a in 0..d {
                for b in 0..d {
                    choi[(i * d + a, j * d + b)] = out[(a, b)];
                }
            }
        }
    }
    let state = DensityMatrix::new(choi, Shape::new(vec![d, d])?)?;
    ChannelChoi::new(state)
}

/// Recovers the channel action from its normalised Choi state:
/// `ε(ρ) = d_in · tr_in[(ρ ⊗ I_out) Υ^{T_in}]`.
pub fn apply_channel(choi: &ChannelChoi, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if rho.dim() != choi.d_in {
        return Err(Error::mismatch(format!(
            "state of dimension {} into a channel with input dimension {}",
            rho.dim(),
            choi.d_in
        )));
    }
    let dims = [choi.d_in, choi.d_out];
    let transposed = partial_transpose_matrix(choi.state.matrix(), &dims, &[0])?;
    let lifted = kron(rho.matrix(), &ComplexMatrix::identity(choi.d_out, choi.d_out))?;
    let out = partial_trace_matrix(&(lifted * transposed), &dims, &[1])?
        * C64::new(choi.d_in as f64, 0.0);
    Ok(DensityMatrix::from_parts_unchecked(out, Shape::single(choi.d_out)))
}

/// Input–output correlation `I(in:out)` of the Choi state, in nats.
pub fn input_output_correlation(choi: &ChannelChoi) -> Result<f64> {
    mutual_information_with(choi.state(), &[vec![0], vec![1]], &Tolerances::default())
}

/// Trace distance between the Choi state and `I/d_in ⊗ ρ_out`; zero exactly
/// for fixed-output channels.
pub fn fixed_output_distance(choi: &ChannelChoi) -> Result<f64> {
    let product = DensityMatrix::maximally_mixed(&[choi.d_in])?.tensor(&choi.state.partial_trace(&[1])?)?;
    trace_distance(choi.state(), &product)
}

/// Spectral purification `Σ_k √λ_k |v_k>_E |k>_R` of `sigma`, keeping only
/// eigenvalues above `tol.psd`. Returns the vector on `E ⊗ R` and the
/// ancilla dimension (the numerical rank).
pub fn spectral_purification(sigma: &DensityMatrix, tol: &Tolerances) -> Result<(ComplexVector, usize)> {
    let eig = eigh(sigma.matrix())?;
    let kept: Vec<usize> = (0..eig.values.len())
        .filter(|&k| eig.values[k] > tol.psd)
        .collect();
    if kept.is_empty() {
        return Err(Error::NotAState("environment state has no support".into()));
    }
    let d_env = sigma.dim();
    let rank = kept.len();
    let mut psi = ComplexVector::zeros(d_env * rank);
    for (r, &k) in kept.iter().enumerate() {
        let amp = eig.values[k].sqrt();
        for e in 0..d_env {
            psi[e * rank + r] = eig.vectors[(e, k)] * amp;
        }
    }
    let norm = psi.norm();
    Ok((psi / C64::new(norm, 0.0), rank))
}

/// Mutual informations of the global pure state
/// `η = (I_in ⊗ U ⊗ I_R)(Φ ⊗ Ψ_ER)` on `in ⊗ out ⊗ E ⊗ R`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtaDiagnostics {
    /// `I(in:out)_η`, equal to the channel's input–output correlation.
    pub markovian: f64,
    /// `2 ln d − markovian`.
    pub complement: f64,
    /// `I(in:ER)_η`, the information about the input handed to the
    /// environment and its purifier.
    pub in_env_ancilla: f64,
    /// `I(in out:R)_η`, what the system learns about the initial
    /// environment.
    pub system_ancilla: f64,
}

pub fn eta_diagnostics(spec: &DilationSpec) -> Result<EtaDiagnostics> {
    let tol = Tolerances::default();
    let d = spec.d_sys;
    let d_env = spec.d_env();
    let (env_psi, rank) = spectral_purification(&spec.env_state, &tol)?;
    let mut phi = ComplexVector::zeros(d * d);
    for i in 0..d {
        phi[i * d + i] = C64::new(1.0 / (d as f64).sqrt(), 0.0);
    }
    let dims = [d, d, d_env, rank];
    crate::tolerance::checked_product(dims)?;
    let mut psi = phi.kronecker(&env_psi);
    crate::linalg::apply_on_subsystems(&mut psi, &dims, &[1, 2], &spec.unitary)?;
    let eta = DensityMatrix::pure(&psi, Shape::new(dims.to_vec())?)?;

    let in_out = eta.partial_trace(&[0, 1])?;
    let markovian = mutual_information_with(&in_out, &[vec![0], vec![1]], &tol)?;
    let in_er = eta.partial_trace(&[0, 2, 3])?;
    let in_env_ancilla = mutual_information_with(&in_er, &[vec![0], vec![1, 2]], &tol)?;
    let inout_r = eta.partial_trace(&[0, 1, 3])?;
    let system_ancilla = mutual_information_with(&inout_r, &[vec![0, 1], vec![2]], &tol)?;
    Ok(EtaDiagnostics {
        markovian,
        complement: 2.0 * (d as f64).ln() - markovian,
        in_env_ancilla,
        system_ancilla,
    })
}
