//! Choi states of quantum channels and multitime process tensors, together
//! with the correlation quantifiers that split a process's temporal
//! correlations into a Markovian part (carried through the system) and a
//! non-Markovian part (carried through the environment).
//!
//! * [`linalg`]: dense complex matrices, partial traces, spectra, entropies.
//! * [`channel`]: single-step channels as normalised Choi states, Stinespring
//!   dilations and information-exchange diagnostics.
//! * [`process`]: n-step process tensors built by circuit simulation, the
//!   causality hierarchy, named example processes and Haar-random sampling.
//! * [`metrics`]: total, Markovian and non-Markovian correlations and the
//!   bounds relating them.
//! * [`io`] and [`cli`]: file formats and the `proctensor` command surface.

// `!(x <= tol)` is used on purpose so that NaN counts as a failure
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod cli;
pub mod error;
pub mod gates;
pub mod io;
pub mod linalg;
pub mod metrics;
pub mod process;
pub mod tolerance;

pub use error::{Error, Result};
pub use tolerance::Tolerances;
