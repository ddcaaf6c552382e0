//! Pinned tolerances for every identity check.
//!
//! Residuals are relative Frobenius norms unless stated otherwise.

/// Default for exact algebraic identities evaluated in f64.
pub const DEFAULT: f64 = 1e-10;

/// Default for checks that go through an eigensolver.
pub const EIGEN: f64 = 1e-8;

/// Twisted vs. explicit construction of the generalized R-matrix.
pub const TWIST: f64 = 1e-12;

/// Constant Yang–Baxter equation on the 27-dimensional cube.
pub const YBE: f64 = 1e-11;

pub const HECKE: f64 = 1e-12;

/// Spectrum of the braid matrix against `{q ×6, −q⁻¹ ×3}`.
pub const HECKE_SPECTRUM: f64 = 1e-9;

/// Braid-form spectra of the twisted and standard matrices.
pub const BRAID_SPECTRA: f64 = 1e-9;

/// Singular-value threshold (relative to ‖M‖_F) for projector ranks.
pub const RANK: f64 = 1e-8;

pub const QDET: f64 = 1e-10;

/// Best-fit scalar of the *-structure identity must be within this of 1.
pub const STAR_SCALAR: f64 = 1e-10;

pub const STAR: f64 = 1e-12;

/// Agreement of the two displayed forms of the Baxterized braid matrix.
pub const BAXTER_FORMS: f64 = 1e-12;

pub const SPECTRAL_YBE: f64 = 1e-11;

/// Non-Hermiticity witness: `‖M − M†‖` must exceed this.
pub const NON_HERMITIAN: f64 = 1e-6;

pub const OSCILLATOR: f64 = 1e-12;

/// Recursion vs. closed form of the ladder weights.
pub const LADDER_CLOSED_FORM: f64 = 1e-13;

/// Covariance relation on products of generators.
pub const RXX: f64 = 1e-11;

pub const LAMBDA_TRANSFORM: f64 = 1e-12;

pub const COACTION: f64 = 1e-10;

pub const DENSITY_TABLE: f64 = 1e-12;

pub const TRANSFER_COMMUTING: f64 = 1e-10;

pub const REFERENCE_STATE: f64 = 1e-10;

/// Logarithmic derivative of the transfer matrix, finite-difference limited.
pub const LOG_DERIVATIVE: f64 = 1e-5;

pub const OPEN_SPECTRA: f64 = 1e-8;

/// `max |Im λ| ≤ REALITY · ‖H‖_F`.
pub const REALITY: f64 = 1e-8;

pub const TRANSLATION: f64 = 1e-10;

/// Below this `|ω|` the Baxterized matrix degenerates at `u = 1`.
pub const REGULARITY_OMEGA: f64 = 1e-3;
