use anyhow::{bail, Result};
use cgtwist_core::linalg::eigenvalues;
use cgtwist_core::spinchain::{self, ChainSpec};
use cgtwist_core::{Boundary, CheckReport, Extra, ModelParameters};
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::suites::{self, Suite};

/// Configuration problems surface before any work starts (exit status 2).
fn ensure_cap(dim: usize, cap: usize) -> Result<()> {
    if dim > cap {
        bail!("dimension {dim} exceeds the configured cap {cap}");
    }
    Ok(())
}

fn chain_dim(length: usize) -> usize {
    3usize.saturating_pow(length as u32)
}

fn boundary_name(b: Boundary) -> &'static str {
    match b {
        Boundary::Open => "open",
        Boundary::Periodic => "periodic",
    }
}

pub fn check(cfg: &RunConfig, suite: Suite) -> Result<Vec<CheckReport>> {
    ensure_cap(suites::required_dim(suite, cfg), cfg.cap)?;
    Ok(suites::run_suite(suite, cfg))
}

fn spectrum_at(
    p: &ModelParameters,
    length: usize,
    boundary: Boundary,
    cap: usize,
) -> Result<CheckReport> {
    let spec = ChainSpec::with_cap(length, boundary, *p, cap)?;
    let spectrum = eigenvalues(&spinchain::chain_hamiltonian(&spec)?)?;
    Ok(CheckReport::verdict("spectrum", true)
        .with_params(p)
        .with_param("length", length as f64)
        .with_extra("boundary", Extra::Text(boundary_name(boundary).into()))
        .with_extra("max_abs_imag", Extra::Scalar(spectrum.max_abs_imag()))
        .with_extra("eigenvalues", Extra::complex(&spectrum.sorted())))
}

/// Full eigenvalue multiset of the chain Hamiltonian at every grid point.
pub fn spectrum(cfg: &RunConfig, length: usize, boundary: Boundary) -> Result<Vec<CheckReport>> {
    if length < 2 {
        bail!("chain length must be at least 2");
    }
    ensure_cap(chain_dim(length), cfg.cap)?;
    cfg.points()
        .par_iter()
        .map(|p| spectrum_at(p, length, boundary, cfg.cap))
        .collect()
}

pub fn compare(cfg: &RunConfig, length: usize, boundary: Boundary) -> Result<Vec<CheckReport>> {
    if length < 2 {
        bail!("chain length must be at least 2");
    }
    ensure_cap(chain_dim(length), cfg.cap)?;
    let reports: Vec<CheckReport> = cfg
        .points()
        .par_iter()
        .map(|p| spinchain::compare_spectra_twisted_vs_standard(length, p, boundary, cfg.cap))
        .collect::<cgtwist_core::Result<_>>()?;
    Ok(reports
        .into_iter()
        .map(|r| cfg.apply_tolerance(r))
        .collect())
}

/// Oscillator suite at ladder dimension `dim` (coaction included).
pub fn oscillator(cfg: &RunConfig, dim: usize) -> Result<Vec<CheckReport>> {
    if dim < 2 {
        bail!("ladder dimension must be at least 2, got {dim}");
    }
    let cfg = RunConfig {
        dim,
        coaction_dim: dim,
        ..cfg.clone()
    };
    check(&cfg, Suite::Oscillator)
}
