//! Seeded random unitaries, states and processes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::linalg::{ComplexMatrix, ComplexVector, DensityMatrix, Shape, C64};
use crate::{Error, Result};

use super::{build_from_circuit, CircuitProcessSpec, ProcessTensor};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re * scale, im * scale)
}

fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    // fill row by row so the draw order does not depend on storage layout
    let mut m = ComplexMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = gaussian(rng);
        }
    }
    m
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the
/// phases of `R`'s diagonal moved into `Q`.
pub fn haar_unitary_with<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let z = ginibre(dim, dim, rng);
    let qr = z.qr();
    let mut q = qr.q();
    let r = qr.r();
    for k in 0..dim {
        let rkk = r[(k, k)];
        let norm = rkk.norm();
        let phase = if norm > 0.0 { rkk / norm } else { C64::new(1.0, 0.0) };
        for i in 0..dim {
            q[(i, k)] *= phase;
        }
    }
    q
}

pub fn haar_unitary(dim: usize, seed: u64) -> ComplexMatrix {
    haar_unitary_with(dim, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Full-rank random mixed state `G G† / tr(G G†)` with `G` Ginibre.
pub fn random_density_matrix(dim: usize, seed: u64) -> DensityMatrix {
    random_density_matrix_with(dim, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub(crate) fn random_density_matrix_with<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DensityMatrix {
    let g = ginibre(dim, dim, rng);
    let gg = &g * g.adjoint();
    let tr = gg.trace();
    DensityMatrix::from_parts_unchecked(gg / tr, Shape::single(dim))
}

/// Uniformly random pure state on `shape`.
pub fn random_pure_state(shape: Shape, seed: u64) -> Result<DensityMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let psi = ComplexVector::from_iterator(shape.total(), (0..shape.total()).map(|_| gaussian(&mut rng)));
    DensityMatrix::pure(&psi, shape)
}

/// Initial environment of a random process.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnvInit {
    MaximallyMixed,
    PureGround,
    SeededRandom,
}

impl std::str::FromStr for EnvInit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "maximally-mixed" => Ok(EnvInit::MaximallyMixed),
            "pure-ground" => Ok(EnvInit::PureGround),
            "seeded-random" => Ok(EnvInit::SeededRandom),
            other => Err(Error::parse(
                "env_init",
                format!("`{other}` is not one of maximally-mixed, pure-ground, seeded-random"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomSpec {
    pub n: usize,
    pub d: usize,
    pub d_env: usize,
    pub seed: u64,
    pub env_init: EnvInit,
}

impl RandomSpec {
    pub fn new(n: usize, d: usize, d_env: usize, seed: u64) -> Self {
        RandomSpec {
            n,
            d,
            d_env,
            seed,
            env_init: EnvInit::SeededRandom,
        }
    }

    pub fn with_env_init(mut self, env_init: EnvInit) -> Self {
        self.env_init = env_init;
        self
    }
}

/// Environment state and `n` Haar unitaries drawn from one ChaCha8 stream
/// seeded with `spec.seed` (environment first, then unitaries in step
/// order).
pub fn random_circuit_spec(spec: &RandomSpec) -> Result<CircuitProcessSpec> {
    if spec.n == 0 || spec.d < 2 || spec.d_env == 0 {
        return Err(Error::arg(format!(
            "random process needs n >= 1, d >= 2, d_env >= 1 (got n = {}, d = {}, d_env = {})",
            spec.n, spec.d, spec.d_env
        )));
    }
    crate::tolerance::checked_product(
        std::iter::repeat_n(spec.d, 2 * spec.n).chain([spec.d_env, spec.d_env]),
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let env = match spec.env_init {
        EnvInit::MaximallyMixed => DensityMatrix::maximally_mixed(&[spec.d_env])?,
        EnvInit::PureGround => DensityMatrix::basis(spec.d_env, 0)?,
        EnvInit::SeededRandom => random_density_matrix_with(spec.d_env, &mut rng),
    };
    let joint = spec.d * spec.d_env;
    let unitaries = (0..spec.n).map(|_| haar_unitary_with(joint, &mut rng)).collect();
    CircuitProcessSpec::new(spec.d, env, unitaries)
}

pub fn random_process(spec: &RandomSpec) -> Result<ProcessTensor> {
    build_from_circuit(&random_circuit_spec(spec)?)
}
