//! The integrable `ℂ³` chain: density `h = 𝒫R`, open/periodic Hamiltonians,
//! monodromy and transfer matrices from the Baxterized braid matrix, and the
//! spectral checks built on them.
//!
//! Monodromy convention: `T(u) = R_{0L}(u) ⋯ R_{01}(u)` on `aux ⊗ site₁ ⊗ … ⊗ site_L`,
//! with `R(u) = 𝒫Ř(u)` and the auxiliary space as the leading tensor factor.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    c, cyclic_shift, eigenvalues, embed_pair, embed_two_site, partial_trace_first,
    permutation_operator, re, residual_norm, spectra_match, Boundary, ComplexMatrix, C64,
    DEFAULT_DIM_CAP,
};
use crate::params::ModelParameters;
use crate::report::{CheckReport, Extra};
use crate::rmatrix::{baxterize, braid, cg_r_explicit, standard_r, N};
use crate::tolerances;

/// Finite-difference steps for `dt/du` at `u = 1`.
pub const FD_STEP: f64 = 1e-6;
pub const FD_STEP_REFINED: f64 = 5e-7;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainSpec {
    pub length: usize,
    pub boundary: Boundary,
    pub params: ModelParameters,
    pub cap: usize,
}

impl ChainSpec {
    pub fn new(length: usize, boundary: Boundary, params: ModelParameters) -> Result<Self> {
        Self::with_cap(length, boundary, params, DEFAULT_DIM_CAP)
    }

    pub fn with_cap(
        length: usize,
        boundary: Boundary,
        params: ModelParameters,
        cap: usize,
    ) -> Result<Self> {
        if length < 2 {
            return Err(Error::InvalidParameter(format!(
                "chain length must be at least 2, got {length}"
            )));
        }
        let dim = chain_dim(length, cap)?;
        debug_assert!(dim <= cap);
        Ok(Self {
            length,
            boundary,
            params,
            cap,
        })
    }

    pub fn dim(&self) -> usize {
        N.pow(self.length as u32)
    }
}

fn chain_dim(slots: usize, cap: usize) -> Result<usize> {
    match N.checked_pow(slots as u32) {
        Some(d) if d <= cap => Ok(d),
        Some(d) => Err(Error::DimensionCapExceeded { dim: d, cap }),
        None => Err(Error::DimensionCapExceeded {
            dim: usize::MAX,
            cap,
        }),
    }
}

/// A chain together with the spectral parameters at which its transfer
/// matrices are evaluated.
#[derive(Debug, Clone)]
pub struct TransferFamily {
    pub chain: ChainSpec,
    pub points: Vec<C64>,
}

impl TransferFamily {
    pub fn new(chain: ChainSpec, points: Vec<C64>) -> Result<Self> {
        if points.iter().any(|u| *u == re(0.0) || !u.is_finite()) {
            return Err(Error::InvalidParameter(
                "spectral parameters must be finite and nonzero".into(),
            ));
        }
        Ok(Self { chain, points })
    }

    /// Indices of the points `u = ±1`, where `Ř(u)` degenerates to `ωI`.
    pub fn regular_points(&self) -> Vec<usize> {
        self.points
            .iter()
            .enumerate()
            .filter(|(_, u)| **u == re(1.0) || **u == re(-1.0))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn transfer_matrices(&self) -> Result<Vec<ComplexMatrix>> {
        self.points
            .iter()
            .map(|&u| transfer_matrix(&self.chain, u))
            .collect()
    }
}

/// The two-site density, transcribed entry by entry (1-based).
pub fn hamiltonian_density(params: &ModelParameters) -> ComplexMatrix {
    let (q, p, nu) = (params.q(), params.p(), params.nu());
    let omega = params.omega();
    let mut h = ComplexMatrix::zeros(9);
    let entries = [
        (1, 1, q),
        (5, 5, q),
        (9, 9, q),
        (4, 4, omega),
        (7, 7, omega),
        (8, 8, omega),
        (2, 4, 1.0 / p),
        (6, 8, 1.0 / p),
        (3, 5, q * nu),
        (3, 7, q / (p * p)),
        (4, 2, p),
        (8, 6, p),
        (7, 3, p * p / q),
        (7, 5, -p * p * nu / q),
    ];
    for (row, col, v) in entries {
        h.set_entry(row, col, re(v));
    }
    h
}

/// `𝒫R(q)` for the standard (untwisted) R-matrix.
pub fn standard_density(q: f64) -> Result<ComplexMatrix> {
    Ok(&permutation_operator(N) * &standard_r(q, N)?)
}

pub fn check_density_table(params: &ModelParameters) -> Result<CheckReport> {
    let derived = &permutation_operator(N) * &cg_r_explicit(params);
    let res = residual_norm(&hamiltonian_density(params), &derived)?;
    Ok(CheckReport::residual("density_table", res, tolerances::DENSITY_TABLE).with_params(params))
}

/// `Σ_n h_{n,n+1}`, plus the wrap term `h_{L,1}` for a periodic chain.
pub fn chain_from_density(
    h: &ComplexMatrix,
    length: usize,
    boundary: Boundary,
    cap: usize,
) -> Result<ComplexMatrix> {
    let dim = chain_dim(length, cap)?;
    let bonds = match boundary {
        Boundary::Open => length - 1,
        Boundary::Periodic => length,
    };
    let mut out = ComplexMatrix::zeros(dim);
    for site in 1..=bonds {
        out = &out + &embed_two_site(h, site, length, N, boundary, cap)?;
    }
    Ok(out)
}

pub fn chain_hamiltonian(spec: &ChainSpec) -> Result<ComplexMatrix> {
    chain_from_density(
        &hamiltonian_density(&spec.params),
        spec.length,
        spec.boundary,
        spec.cap,
    )
}

pub fn standard_chain_hamiltonian(spec: &ChainSpec) -> Result<ComplexMatrix> {
    chain_from_density(
        &standard_density(spec.params.q())?,
        spec.length,
        spec.boundary,
        spec.cap,
    )
}

/// `R(u) = 𝒫Ř(u)`.
pub fn spectral_r(params: &ModelParameters, u: C64) -> Result<ComplexMatrix> {
    Ok(&permutation_operator(N) * &baxterize(params, u)?)
}

/// Same Baxterization applied to the standard braid matrix.
fn standard_spectral_r(q: f64, u: C64) -> Result<ComplexMatrix> {
    if u == re(0.0) || !u.is_finite() {
        return Err(Error::InvalidParameter(
            "spectral parameter must be finite and nonzero".into(),
        ));
    }
    let r_check = braid(&standard_r(q, N)?, N);
    let id = ComplexMatrix::identity(N * N);
    let bax = &r_check.scale(u - u.inv()) + &id.scale(re(q - 1.0 / q) * u.inv());
    Ok(&permutation_operator(N) * &bax)
}

fn monodromy_from(r_u: &ComplexMatrix, length: usize, cap: usize) -> Result<ComplexMatrix> {
    let slots = length + 1;
    let dim = chain_dim(slots, cap)?;
    let mut t = ComplexMatrix::identity(dim);
    for site in (1..=length).rev() {
        t = &t * &embed_pair(r_u, 0, site, slots, N, cap)?;
    }
    Ok(t)
}

/// `T(u)` for `length ≥ 1` sites; dimension `3^{length+1}` must fit the cap.
pub fn monodromy_sites(
    params: &ModelParameters,
    length: usize,
    u: C64,
    cap: usize,
) -> Result<ComplexMatrix> {
    if length == 0 {
        return Err(Error::InvalidParameter(
            "monodromy needs at least one site".into(),
        ));
    }
    monodromy_from(&spectral_r(params, u)?, length, cap)
}

pub fn monodromy(spec: &ChainSpec, u: C64) -> Result<ComplexMatrix> {
    monodromy_sites(&spec.params, spec.length, u, spec.cap)
}

/// `t(u) = tr_aux T(u)` for `length ≥ 1` sites.
pub fn transfer_matrix_sites(
    params: &ModelParameters,
    length: usize,
    u: C64,
    cap: usize,
) -> Result<ComplexMatrix> {
    partial_trace_first(&monodromy_sites(params, length, u, cap)?, N)
}

pub fn transfer_matrix(spec: &ChainSpec, u: C64) -> Result<ComplexMatrix> {
    transfer_matrix_sites(&spec.params, spec.length, u, spec.cap)
}

fn standard_transfer_matrix(spec: &ChainSpec, u: C64) -> Result<ComplexMatrix> {
    partial_trace_first(
        &monodromy_from(
            &standard_spectral_r(spec.params.q(), u)?,
            spec.length,
            spec.cap,
        )?,
        N,
    )
}

fn chain_params(spec: &ChainSpec, report: CheckReport) -> CheckReport {
    report
        .with_params(&spec.params)
        .with_param("length", spec.length as f64)
}

/// `‖[t(u), t(v)]‖ / (‖t(u)‖‖t(v)‖)`.
pub fn check_transfer_commuting(spec: &ChainSpec, u: C64, v: C64) -> Result<CheckReport> {
    let tu = transfer_matrix(spec, u)?;
    let tv = transfer_matrix(spec, v)?;
    let denom = tu.frobenius_norm() * tv.frobenius_norm();
    let comm = tu.commutator(&tv).frobenius_norm();
    let res = if denom > 0.0 { comm / denom } else { comm };
    Ok(chain_params(
        spec,
        CheckReport::residual("transfer_commuting", res, tolerances::TRANSFER_COMMUTING),
    )
    .with_extra("u", Extra::complex(&[u]))
    .with_extra("v", Extra::complex(&[v])))
}

/// Index of `e₃^{⊗L}`, the last basis vector.
fn reference_index(dim: usize) -> usize {
    dim - 1
}

/// Relative residual of `t Ω = Λ Ω` and the eigenvalue `Λ = ⟨Ω, tΩ⟩`.
fn reference_residual(t: &ComplexMatrix) -> Result<(f64, C64)> {
    let omega = reference_index(t.dim());
    let column: Vec<C64> = (0..t.dim()).map(|row| t.at(row, omega)).collect();
    let norm = column.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::Singular("t(u) annihilates the reference state"));
    }
    let lambda = column[omega];
    let off = column
        .iter()
        .enumerate()
        .map(|(i, z)| {
            if i == omega {
                (z - lambda).norm_sqr()
            } else {
                z.norm_sqr()
            }
        })
        .sum::<f64>()
        .sqrt();
    Ok((off / norm, lambda))
}

/// `Ω = e₃^{⊗L}` is an eigenvector of `t(u)`. The standard chain's reference
/// eigenvalue and the ratio of the two are recorded alongside.
pub fn check_reference_state(spec: &ChainSpec, u: C64) -> Result<CheckReport> {
    let (res, lambda) = reference_residual(&transfer_matrix(spec, u)?)?;
    let (_, lambda_std) = reference_residual(&standard_transfer_matrix(spec, u)?)?;
    let mut report = chain_params(
        spec,
        CheckReport::residual("reference_state", res, tolerances::REFERENCE_STATE),
    )
    .with_extra("u", Extra::complex(&[u]))
    .with_extra("eigenvalue", Extra::complex(&[lambda]))
    .with_extra("eigenvalue_standard", Extra::complex(&[lambda_std]));
    if lambda_std != re(0.0) {
        report = report.with_extra("eigenvalue_ratio", Extra::complex(&[lambda / lambda_std]));
    }
    Ok(report)
}

/// Least-squares `D ≈ aH + bI`; returns `(a, b, relative residual)`.
fn fit_affine(d: &ComplexMatrix, h: &ComplexMatrix) -> Result<(C64, C64, f64)> {
    let n = d.dim();
    let hs = h.as_inner();
    let ds = d.as_inner();
    let hh: C64 = hs.iter().map(|z| re(z.norm_sqr())).sum();
    let hi: C64 = (0..n).map(|i| hs[(i, i)].conj()).sum();
    let hd: C64 = hs.iter().zip(ds.iter()).map(|(x, y)| x.conj() * y).sum();
    let id: C64 = (0..n).map(|i| ds[(i, i)]).sum();
    let ii = re(n as f64);
    // [hh hi; conj(hi) ii] [a; b] = [hd; id]
    let det = hh * ii - hi * hi.conj();
    if det.norm() <= f64::EPSILON * hh.norm() * ii.norm() {
        return Err(Error::Singular(
            "Hamiltonian is proportional to the identity",
        ));
    }
    let a = (hd * ii - hi * id) / det;
    let b = (hh * id - hi.conj() * hd) / det;
    let fit = &h.scale(a) + &ComplexMatrix::identity(n).scale(b);
    let res = residual_norm(&fit, d)?;
    Ok((a, b, res))
}

/// `t(1)⁻¹ t'(1)` against the periodic Hamiltonian. The derivative is a
/// central difference at step `1e-6`, refined once by Richardson
/// extrapolation with step `5e-7`.
///
/// At `ω = 0` the transfer matrix at `u = 1` vanishes, so `|ω|` below
/// [`tolerances::REGULARITY_OMEGA`] is rejected as singular.
pub fn check_hamiltonian_from_transfer(spec: &ChainSpec) -> Result<CheckReport> {
    if spec.boundary != Boundary::Periodic {
        return Err(Error::InvalidParameter(
            "log-derivative check needs a periodic chain".into(),
        ));
    }
    let omega = spec.params.omega();
    if omega.abs() < tolerances::REGULARITY_OMEGA {
        return Err(Error::Singular("t(1) vanishes at omega = 0"));
    }
    let t = |u: f64| transfer_matrix(spec, re(u));
    let central =
        |h: f64| -> Result<ComplexMatrix> { Ok((&t(1.0 + h)? - &t(1.0 - h)?).scale_re(0.5 / h)) };
    let d1 = central(FD_STEP)?;
    let d2 = central(FD_STEP_REFINED)?;
    let dt = (&d2.scale_re(4.0) - &d1).scale_re(1.0 / 3.0);
    let log_der = t(1.0)?.solve(&dt)?;
    let (a, b, res) = fit_affine(&log_der, &chain_hamiltonian(spec)?)?;
    Ok(chain_params(
        spec,
        CheckReport::residual("hamiltonian_from_transfer", res, tolerances::LOG_DERIVATIVE),
    )
    .with_extra("fit", Extra::complex(&[a, b])))
}

/// Open chains: `H_CG` and the standard chain share a spectrum. Periodic
/// chains: both spectra and their distance are reported, never asserted.
pub fn compare_spectra_twisted_vs_standard(
    length: usize,
    params: &ModelParameters,
    boundary: Boundary,
    cap: usize,
) -> Result<CheckReport> {
    let spec = ChainSpec::with_cap(length, boundary, *params, cap)?;
    let cg = eigenvalues(&chain_hamiltonian(&spec)?)?;
    let std = eigenvalues(&standard_chain_hamiltonian(&spec)?)?;
    let (ok, dev) = spectra_match(&cg, &std, tolerances::OPEN_SPECTRA)?;
    let asserted = boundary == Boundary::Open;
    let base = if asserted {
        CheckReport::residual("twisted_vs_standard_spectra", dev, tolerances::OPEN_SPECTRA)
            .require(ok)
    } else {
        CheckReport::verdict("twisted_vs_standard_spectra", true)
    };
    Ok(chain_params(&spec, base)
        .with_extra("asserted", Extra::Flag(asserted))
        .with_extra("deviation", Extra::Scalar(dev))
        .with_extra("spectrum_cg", Extra::complex(&cg.sorted()))
        .with_extra("spectrum_standard", Extra::complex(&std.sorted())))
}

/// Open chain: `H_CG` is non-Hermitian for `ν ≠ 0` yet has a real spectrum.
pub fn check_spectrum_reality(
    length: usize,
    params: &ModelParameters,
    cap: usize,
) -> Result<CheckReport> {
    let spec = ChainSpec::with_cap(length, Boundary::Open, *params, cap)?;
    let h = chain_hamiltonian(&spec)?;
    let spectrum = eigenvalues(&h)?;
    let scale = h.frobenius_norm().max(f64::MIN_POSITIVE);
    let imag = spectrum.max_abs_imag() / scale;
    let non_herm = (&h - &h.adjoint()).frobenius_norm();
    let expect_non_hermitian = params.nu().abs() > tolerances::NON_HERMITIAN;
    Ok(chain_params(
        &spec,
        CheckReport::residual("spectrum_reality", imag, tolerances::REALITY),
    )
    .require(!expect_non_hermitian || non_herm > tolerances::NON_HERMITIAN)
    .with_extra("non_hermiticity", Extra::Scalar(non_herm))
    .with_extra("non_hermitian_asserted", Extra::Flag(expect_non_hermitian)))
}

/// `S t(u) = t(u) S` for the cyclic shift `S`, and likewise for the periodic
/// Hamiltonian (whose wrap term uses the same shift).
pub fn check_translation_covariance(spec: &ChainSpec, u: C64) -> Result<CheckReport> {
    let s = cyclic_shift(spec.length, N, spec.cap)?;
    let t = transfer_matrix(spec, u)?;
    let res_t = residual_norm(&(&s * &t), &(&t * &s))?;
    let mut res = res_t;
    if spec.boundary == Boundary::Periodic {
        let h = chain_hamiltonian(spec)?;
        res = res.max(residual_norm(&(&s * &h), &(&h * &s))?);
    }
    Ok(chain_params(
        spec,
        CheckReport::residual("translation_covariance", res, tolerances::TRANSLATION),
    )
    .with_extra("u", Extra::complex(&[u])))
}

/// Spectral parameters used by the default checks: two real, one complex.
pub fn default_spectral_points() -> [C64; 3] {
    [re(0.7), re(1.9), c(0.6, 0.2)]
}
