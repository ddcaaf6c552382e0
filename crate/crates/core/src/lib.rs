//! Numerical toolkit for the two-parameter twisted Cremmer–Gervais
//! R-matrix of `sl_q(3)`.
//!
//! * [`rmatrix`]: the R-matrix, its twist and every matrix-level identity
//!   (Yang–Baxter, Hecke, quantum determinant, *-structure, Baxterization).
//! * [`qoscillator`]: the covariant q-oscillator on truncated Fock ladders.
//! * [`spinchain`]: the integrable chain built from the Baxterized matrix,
//!   its transfer matrices and exact-diagonalization spectra.
//!
//! Everything is dense `f64` complex linear algebra ([`linalg`]); identity
//! checks return a [`CheckReport`] with a relative residual and a pinned
//! tolerance from [`tolerances`].

// Index loops mirror the ladder and tensor formulas; `!(x <= tol)` is how
// NaN residuals get rejected.
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod linalg;
pub mod params;
pub mod qoscillator;
pub mod report;
pub mod rmatrix;
pub mod sampling;
pub mod spinchain;
pub mod tolerances;

pub use error::{Error, Result};
pub use linalg::{Boundary, ComplexMatrix, Spectrum, C64};
pub use params::ModelParameters;
pub use report::{CheckReport, Extra};
