//! Numerical tolerances and the dense-dimension limit.

use std::sync::OnceLock;

/// Default upper bound on any dense vector or matrix dimension.
pub const DEFAULT_MAX_DIM: usize = 1 << 20;

/// Environment variable overriding [`DEFAULT_MAX_DIM`].
pub const MAX_DIM_ENV: &str = "PROCTENSOR_MAX_DIM";

/// Tolerances used by validation, entropy and audit routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Hermiticity: max entrywise |m - m^dagger|.
    pub herm: f64,
    /// |tr(rho) - 1|.
    pub trace: f64,
    /// Eigenvalues in (-psd, 0] are clamped to zero; below that is an error.
    pub psd: f64,
    /// Reconstruction and unitarity residuals.
    pub eig: f64,
    /// Weight of a state outside another state's support.
    pub supp: f64,
    /// Agreement between two routes to the same entropic quantity.
    pub xcheck: f64,
    /// Trace-distance residual allowed per level of the causality hierarchy.
    pub causal: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            herm: 1e-10,
            trace: 1e-10,
            psd: 1e-10,
            eig: 1e-9,
            supp: 1e-10,
            xcheck: 1e-8,
            causal: 1e-9,
        }
    }
}

/// The dense dimension limit, honouring `PROCTENSOR_MAX_DIM` when set to a
/// positive integer. Read once per process.
pub fn max_dim() -> usize {
    static LIMIT: OnceLock<usize> = OnceLock::new();
    *LIMIT.get_or_init(|| {
        std::env::var(MAX_DIM_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&v| v > 0)
            .unwrap_or(DEFAULT_MAX_DIM)
    })
}

pub(crate) fn check_dim(requested: usize) -> crate::Result<()> {
    let limit = max_dim();
    if requested > limit {
        return Err(crate::Error::DimensionLimit { requested, limit });
    }
    Ok(())
}

/// Product of dimensions, failing on overflow or when above the dense limit.
pub(crate) fn checked_product(dims: impl IntoIterator<Item = usize>) -> crate::Result<usize> {
    let mut acc: usize = 1;
    for d in dims {
        acc = acc.checked_mul(d).ok_or(crate::Error::DimensionLimit {
            requested: usize::MAX,
            limit: max_dim(),
        })?;
    }
    check_dim(acc)?;
    Ok(acc)
}
