//! File formats.
//!
//! **Process spec** (JSON):
//!
//! ```json
//! {
//!   "n": 2, "d": 2, "d_env": 2,
//!   "env_init": "pure-ground",
//!   "env_state": { "re": [[1, 0], [0, 0]], "im": [[0, 0], [0, 0]] },
//!   "unitaries": [ { "re": [[...]], "im": [[...]] }, ... ],
//!   "seed": 42
//! }
//! ```
//!
//! `env_state` takes precedence over `env_init`. When `unitaries` is absent
//! the circuit is drawn at random from `seed` exactly as
//! [`crate::process::random_circuit_spec`] does. Matrices are row-major
//! nested arrays on `system ⊗ environment`, system first.
//!
//! **Choi file** (text): a header line
//! `# proctensor-choi n=<n> d=<d> slots=i0,o1,…` followed by `D²` lines
//! `<re> <im>`, the dense matrix in row-major order with the big-endian slot
//! convention.
//!
//! **CSV**: comma separated, one header row, LF line endings, floats in
//! shortest round-trip decimal form.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::linalg::{ComplexMatrix, DensityMatrix, C64};
use crate::process::{
    process_shape, random_circuit_spec, slot_labels, CircuitProcessSpec, EnvInit, RandomSpec,
};
use crate::{Error, Result, Tolerances};

/// Complex matrix as separate real and imaginary row-major arrays.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixRepr {
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixRepr {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let rows = |f: fn(&C64) -> f64| {
            (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| f(&m[(i, j)])).collect())
                .collect()
        };
        MatrixRepr {
            re: rows(|z| z.re),
            im: rows(|z| z.im),
        }
    }

    pub fn to_matrix(&self, field: &str) -> Result<ComplexMatrix> {
        let rows = self.re.len();
        if self.im.len() != rows {
            return Err(Error::parse(field, "`re` and `im` have different row counts"));
        }
        let cols = self.re.first().map_or(0, Vec::len);
        for (k, (r, i)) in self.re.iter().zip(&self.im).enumerate() {
            if r.len() != cols || i.len() != cols {
                return Err(Error::parse(field, format!("row {k} has the wrong length")));
            }
        }
        Ok(ComplexMatrix::from_fn(rows, cols, |i, j| {
            C64::new(self.re[i][j], self.im[i][j])
        }))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProcessSpecFile {
    pub n: usize,
    pub d: usize,
    pub d_env: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub env_init: Option<EnvInit>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub env_state: Option<MatrixRepr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unitaries: Option<Vec<MatrixRepr>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl ProcessSpecFile {
    pub fn parse(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let msg = e.inner().to_string();
            // missing and unknown fields are reported at the parent
            let named = msg.split('`').nth(1).filter(|_| msg.contains("field"));
            let field = match (path.as_str(), named) {
                (".", Some(name)) => name.to_string(),
                (".", None) => "<document>".to_string(),
                (p, Some(name)) if msg.starts_with("missing") => format!("{p}.{name}"),
                (p, _) => p.to_string(),
            };
            Error::parse(field, msg)
        })
    }

    pub fn from_circuit(spec: &CircuitProcessSpec) -> Self {
        ProcessSpecFile {
            n: spec.steps(),
            d: spec.dim(),
            d_env: spec.env_dim(),
            env_init: None,
            env_state: Some(MatrixRepr::from_matrix(spec.env_state().matrix())),
            unitaries: Some(spec.unitaries().iter().map(MatrixRepr::from_matrix).collect()),
            seed: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serialisation cannot fail")
    }

    /// Validates every field and assembles the circuit.
    pub fn to_circuit(&self, tol: &Tolerances) -> Result<CircuitProcessSpec> {
        if self.n == 0 {
            return Err(Error::parse("n", "must be at least 1"));
        }
        if self.d < 2 {
            return Err(Error::parse("d", "must be at least 2"));
        }
        if self.d_env == 0 {
            return Err(Error::parse("d_env", "must be at least 1"));
        }
        let Some(unitaries) = &self.unitaries else {
            let seed = self
                .seed
                .ok_or_else(|| Error::parse("seed", "required when `unitaries` is absent"))?;
            if self.env_state.is_some() {
                return Err(Error::parse("env_state", "random circuits take `env_init`, not an explicit state"));
            }
            let spec = RandomSpec::new(self.n, self.d, self.d_env, seed)
                .with_env_init(self.env_init.unwrap_or(EnvInit::SeededRandom));
            return random_circuit_spec(&spec);
        };
        if unitaries.len() != self.n {
            return Err(Error::parse(
                "unitaries",
                format!("{} matrices for n = {}", unitaries.len(), self.n),
            ));
        }
        let env = match (&self.env_state, self.env_init) {
            (Some(m), _) => {
                let m = m.to_matrix("env_state")?;
                if m.nrows() != self.d_env || m.ncols() != self.d_env {
                    return Err(Error::parse(
                        "env_state",
                        format!("{}x{} matrix for d_env = {}", m.nrows(), m.ncols(), self.d_env),
                    ));
                }
                DensityMatrix::with_tolerances(m, crate::linalg::Shape::single(self.d_env), tol)
                    .map_err(|e| Error::parse("env_state", e.to_string()))?
            }
            (None, Some(EnvInit::MaximallyMixed)) => DensityMatrix::maximally_mixed(&[self.d_env])?,
            (None, Some(EnvInit::PureGround)) => DensityMatrix::basis(self.d_env, 0)?,
            (None, Some(EnvInit::SeededRandom)) => {
                let seed = self
                    .seed
                    .ok_or_else(|| Error::parse("seed", "required for env_init = seeded-random"))?;
                crate::process::random_density_matrix(self.d_env, seed)
            }
            (None, None) => {
                return Err(Error::parse("env_state", "one of `env_state` or `env_init` is required"))
            }
        };
        let joint = self.d * self.d_env;
        let mut mats = Vec::with_capacity(unitaries.len());
        for (k, u) in unitaries.iter().enumerate() {
            let field = format!("unitaries[{k}]");
            let m = u.to_matrix(&field)?;
            if m.nrows() != joint || m.ncols() != joint {
                return Err(Error::parse(
                    field,
                    format!("{}x{} matrix, expected {joint}x{joint}", m.nrows(), m.ncols()),
                ));
            }
            let residual = crate::linalg::unitarity_residual(&m);
            if !(residual <= tol.eig) {
                return Err(Error::parse(
                    field,
                    format!("not unitary (||U U^dagger - I||_F = {residual:e})"),
                ));
            }
            mats.push(m);
        }
        CircuitProcessSpec::with_tolerances(self.d, env, mats, tol)
    }
}

const CHOI_MAGIC: &str = "# proctensor-choi";

/// Serialises a Choi state on `2n` slots of dimension `d`.
pub fn write_choi(state: &DensityMatrix, n: usize, d: usize) -> Result<String> {
    if state.shape().dims() != vec![d; 2 * n].as_slice() {
        return Err(Error::mismatch(format!(
            "state shape {:?} does not have {} slots of dimension {d}",
            state.shape().dims(),
            2 * n
        )));
    }
    let m = state.matrix();
    let mut out = format!("{CHOI_MAGIC} n={n} d={d} slots={}\n", slot_labels(n).join(","));
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let z = m[(i, j)];
            writeln!(out, "{} {}", fmt_f64(z.re), fmt_f64(z.im)).expect("writing to a String");
        }
    }
    Ok(out)
}

pub fn is_choi_file(text: &str) -> bool {
    text.trim_start().starts_with(CHOI_MAGIC)
}

/// Parses a Choi file into `(state, n, d)`. The state is validated as a
/// density matrix but not for causality.
pub fn read_choi(text: &str, tol: &Tolerances) -> Result<(DensityMatrix, usize, usize)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .filter(|h| h.starts_with(CHOI_MAGIC))
        .ok_or_else(|| Error::parse("header", format!("expected `{CHOI_MAGIC} n=.. d=..`")))?;
    let mut n = None;
    let mut d = None;
    for token in header[CHOI_MAGIC.len()..].split_whitespace() {
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| Error::parse("header", format!("malformed token `{token}`")))?;
        match key {
            "n" => n = Some(value.parse::<usize>().map_err(|e| Error::parse("n", e.to_string()))?),
            "d" => d = Some(value.parse::<usize>().map_err(|e| Error::parse("d", e.to_string()))?),
            "slots" => {}
            other => return Err(Error::parse("header", format!("unknown key `{other}`"))),
        }
    }
    let n = n.ok_or_else(|| Error::parse("n", "missing from header"))?;
    let d = d.ok_or_else(|| Error::parse("d", "missing from header"))?;
    let shape = process_shape(n, d).map_err(|e| Error::parse("header", e.to_string()))?;
    let dim = shape.total();
    let mut entries = Vec::with_capacity(dim * dim);
    for (k, line) in lines.enumerate() {
        let mut parts = line.split_whitespace();
        let mut next = |what: &str| -> Result<f64> {
            parts
                .next()
                .ok_or_else(|| Error::parse(format!("entry {k}"), format!("missing {what} part")))?
                .parse::<f64>()
                .map_err(|e| Error::parse(format!("entry {k}"), e.to_string()))
        };
        let re = next("real")?;
        let im = next("imaginary")?;
        entries.push(C64::new(re, im));
    }
    if entries.len() != dim * dim {
        return Err(Error::parse(
            "entries",
            format!("expected {} entries, found {}", dim * dim, entries.len()),
        ));
    }
    let m = ComplexMatrix::from_row_slice(dim, dim, &entries);
    let state = DensityMatrix::with_tolerances(m, shape, tol)
        .map_err(|e| Error::parse("entries", e.to_string()))?;
    Ok((state, n, d))
}

/// Shortest decimal that round-trips to the same `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

/// CSV text with a header row and LF line endings.
pub fn to_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_string(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
