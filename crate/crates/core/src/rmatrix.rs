//! The standard `sl_q(n)` R-matrix, the Cremmer–Gervais twist and the
//! two-parameter twisted R-matrix `R(q, p, ν)`, together with checks of the
//! algebraic identities it satisfies.
//!
//! `R(q, p, ν)` is built two independent ways, entry by entry and as
//! `F₂₁ R(q) F⁻¹`; their agreement is a standing self-test. Quantum-group
//! generators `T_{ij}` are only ever realized by the 3×3 blocks of `R`,
//! `(T_{ij})_{kl} = R_{ik,jl}`, acting on an auxiliary `ℂ³`.

use crate::error::{Error, Result};
use crate::linalg::{
    eigenvalues, embed_pair, flatten, kron, partial_trace_first, permutation_operator, re,
    residual_norm, spectra_match, ComplexMatrix, Spectrum, C64, DEFAULT_DIM_CAP,
};
use crate::params::ModelParameters;
use crate::report::{CheckReport, Extra};
use crate::tolerances;

/// Local dimension of the Cremmer–Gervais construction.
pub const N: usize = 3;

fn unit_kron(n: usize, i: usize, j: usize, k: usize, l: usize) -> (usize, usize) {
    (flatten(n, i, k), flatten(n, j, l))
}

/// `R(q) = Σ q e_ii⊗e_ii + Σ_{i≠j} e_ii⊗e_jj + Σ_{i<j} ω e_ij⊗e_ji`.
pub fn standard_r(q: f64, n: usize) -> Result<ComplexMatrix> {
    if q == 0.0 || !q.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "q must be finite and nonzero, got {q}"
        )));
    }
    if n < 1 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let omega = q - q.recip();
    let mut r = ComplexMatrix::zeros(n * n);
    for i in 1..=n {
        for j in 1..=n {
            let (row, col) = unit_kron(n, i, i, j, j);
            *r.at_mut(row, col) = re(if i == j { q } else { 1.0 });
            if i < j {
                let (row, col) = unit_kron(n, i, j, j, i);
                *r.at_mut(row, col) = re(omega);
            }
        }
    }
    Ok(r)
}

/// The twist `F` and `F₂₁ = 𝒫F𝒫`.
pub fn twist_f(params: &ModelParameters) -> (ComplexMatrix, ComplexMatrix) {
    let (q, p, nu) = (params.q(), params.p(), params.nu());
    let mut f = ComplexMatrix::diagonal(&[1.0, 1.0, q / p, p, p, 1.0, p, p, 1.0].map(re));
    f.set_entry(3, 5, re(p * nu));
    let perm = permutation_operator(N);
    let f21 = &(&perm * &f) * &perm;
    (f, f21)
}

/// `R(q, p, ν)` entered directly from its expansion around `R(q)`.
pub fn cg_r_explicit(params: &ModelParameters) -> ComplexMatrix {
    let (q, p, nu) = (params.q(), params.p(), params.nu());
    let mut r = standard_r(q, N).expect("validated parameters");
    let mut add = |i, j, k, l, v: f64| {
        let (row, col) = unit_kron(N, i, j, k, l);
        *r.at_mut(row, col) += re(v);
    };
    add(1, 1, 2, 2, p - 1.0);
    add(2, 2, 3, 3, p - 1.0);
    add(2, 2, 1, 1, p.recip() - 1.0);
    add(3, 3, 2, 2, p.recip() - 1.0);
    add(1, 1, 3, 3, p * p / q - 1.0);
    add(3, 3, 1, 1, q / (p * p) - 1.0);
    add(3, 2, 1, 2, q * nu);
    add(1, 2, 3, 2, -q * nu * p * p / (q * q));
    r
}

/// `R(q, p, ν) = F₂₁ R(q) F⁻¹`.
pub fn cg_r_twisted(params: &ModelParameters) -> Result<ComplexMatrix> {
    let (f, f21) = twist_f(params);
    let f_inv = f.try_inverse().map_err(|_| Error::Singular("twist F"))?;
    let r = standard_r(params.q(), N)?;
    Ok(&(&f21 * &r) * &f_inv)
}

/// Braid form `Ř = 𝒫R`.
pub fn braid(r: &ComplexMatrix, n: usize) -> ComplexMatrix {
    &permutation_operator(n) * r
}

fn local_dim_of(r: &ComplexMatrix, n: usize) -> Result<()> {
    if r.dim() != n * n {
        return Err(Error::DimensionMismatch {
            expected: n * n,
            found: r.dim(),
        });
    }
    Ok(())
}

/// Relative residual of `R₁₂R₁₃R₂₃ = R₂₃R₁₃R₁₂` on `(ℂⁿ)^{⊗3}`.
pub fn ybe_residual(r: &ComplexMatrix, n: usize) -> Result<f64> {
    local_dim_of(r, n)?;
    let r12 = embed_pair(r, 0, 1, 3, n, DEFAULT_DIM_CAP)?;
    let r13 = embed_pair(r, 0, 2, 3, n, DEFAULT_DIM_CAP)?;
    let r23 = embed_pair(r, 1, 2, 3, n, DEFAULT_DIM_CAP)?;
    let lhs = &(&r12 * &r13) * &r23;
    let rhs = &(&r23 * &r13) * &r12;
    residual_norm(&lhs, &rhs)
}

pub fn check_ybe(r: &ComplexMatrix, n: usize) -> Result<CheckReport> {
    let residual = ybe_residual(r, n)?;
    Ok(CheckReport::residual(
        "yang_baxter",
        residual,
        tolerances::YBE,
    ))
}

/// Spectral decomposition `Ř = q P⁽⁺⁾ − q⁻¹ P⁽⁻⁾` of a Hecke braid matrix.
#[derive(Debug, Clone)]
pub struct HeckeDecomposition {
    pub r_check: ComplexMatrix,
    pub p_plus: ComplexMatrix,
    pub p_minus: ComplexMatrix,
    pub rank_plus: usize,
    pub rank_minus: usize,
    /// Relative residual of `Ř² − ωŘ − I`.
    pub hecke_residual: f64,
}

impl HeckeDecomposition {
    /// Max of the projector identities: completeness, orthogonality,
    /// idempotency and reconstruction of `Ř`.
    pub fn projector_residual(&self, q: f64) -> f64 {
        let dim = self.r_check.dim();
        let id = ComplexMatrix::identity(dim);
        let zero = ComplexMatrix::zeros(dim);
        let rebuilt = self.p_plus.scale_re(q) - self.p_minus.scale_re(q.recip());
        [
            residual_norm(&(&self.p_plus + &self.p_minus), &id),
            residual_norm(&(&self.p_plus * &self.p_minus), &zero),
            residual_norm(&(&self.p_minus * &self.p_plus), &zero),
            residual_norm(&(&self.p_plus * &self.p_plus), &self.p_plus),
            residual_norm(&(&self.p_minus * &self.p_minus), &self.p_minus),
            residual_norm(&rebuilt, &self.r_check),
        ]
        .into_iter()
        .map(|r| r.expect("same dimensions"))
        .fold(0.0, f64::max)
    }
}

/// Builds `Ř = 𝒫r` and its Hecke projectors. The projectors use the
/// `(q + q⁻¹)` normalization, regular at `q = 1`.
pub fn hecke_decomposition(r: &ComplexMatrix, q: f64) -> Result<HeckeDecomposition> {
    let n = (r.dim() as f64).sqrt().round() as usize;
    local_dim_of(r, n)?;
    if q == 0.0 {
        return Err(Error::InvalidParameter("q must be nonzero".into()));
    }
    let qq = q + q.recip();
    if qq.abs() < f64::EPSILON {
        return Err(Error::InvalidParameter("q + 1/q vanishes".into()));
    }
    let omega = q - q.recip();
    let id = ComplexMatrix::identity(n * n);
    let r_check = braid(r, n);
    let square = &r_check * &r_check;
    let hecke_residual = residual_norm(&square, &(&id + &r_check.scale_re(omega)))?;
    if !(hecke_residual <= tolerances::DEFAULT) {
        return Err(Error::NotHecke(hecke_residual));
    }
    let p_plus = (&r_check + &id.scale_re(q.recip())).scale_re(qq.recip());
    let p_minus = (&id.scale_re(q) - &r_check).scale_re(qq.recip());
    let rank_plus = p_plus.rank(tolerances::RANK);
    let rank_minus = p_minus.rank(tolerances::RANK);
    Ok(HeckeDecomposition {
        r_check,
        p_plus,
        p_minus,
        rank_plus,
        rank_minus,
        hecke_residual,
    })
}

/// Rank-one q-antisymmetrizer on `(ℂ³)^{⊗3}`, normalized to an idempotent.
///
/// Built as `E₁₂((q + q⁻¹)E₂₃ − I)E₁₂` from the unnormalized Hecke element
/// `E = qI − Ř = (q + q⁻¹)P⁽⁻⁾`; with idempotent `P⁽⁻⁾` in the same formula
/// the result has full rank 9 and is not a projector. The overall scale is
/// fixed by `M² = tr(M)·M`, which holds for any rank-one `M`.
pub fn q_antisymmetrizer(params: &ModelParameters) -> Result<ComplexMatrix> {
    let q = params.q();
    let qq = q + q.recip();
    let r_check = braid(&cg_r_explicit(params), N);
    let e = &ComplexMatrix::identity(N * N).scale_re(q) - &r_check;
    let i3 = ComplexMatrix::identity(N);
    let e12 = kron(&e, &i3);
    let e23 = kron(&i3, &e);
    let inner = &e23.scale_re(qq) - &ComplexMatrix::identity(N * N * N);
    let m = &(&e12 * &inner) * &e12;
    let rank = m.rank(tolerances::RANK);
    if rank != 1 {
        return Err(Error::RankMismatch {
            what: "q-antisymmetrizer",
            expected: 1,
            found: rank,
        });
    }
    let trace = m.trace();
    if trace.norm() < f64::EPSILON * m.frobenius_norm() {
        return Err(Error::Singular("q-antisymmetrizer trace"));
    }
    Ok(m.scale(trace.inv()))
}

/// Idempotency and rank of [`q_antisymmetrizer`].
pub fn check_q_antisymmetrizer(params: &ModelParameters) -> Result<CheckReport> {
    let a = q_antisymmetrizer(params)?;
    let idempotency = residual_norm(&(&a * &a), &a)?;
    Ok(
        CheckReport::residual("q_antisymmetrizer", idempotency, tolerances::DEFAULT)
            .with_params(params)
            .with_extra("rank", Extra::Integer(a.rank(tolerances::RANK) as i64))
            .with_extra("trace_re", Extra::Scalar(a.trace().re)),
    )
}

/// The R-block representation: `T[i][j]` is the 3×3 block `(T_ij)_{kl} = R_{ik,jl}`.
pub fn r_blocks(r: &ComplexMatrix) -> Vec<Vec<ComplexMatrix>> {
    let n = (r.dim() as f64).sqrt().round() as usize;
    (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| {
                    ComplexMatrix::from_fn(n, |k, l| {
                        r.at(flatten(n, i, k + 1), flatten(n, j, l + 1))
                    })
                })
                .collect()
        })
        .collect()
}

/// Closed form `q·diag(q/p³, 1, p³/q)`.
pub fn qdet_closed_form(params: &ModelParameters) -> ComplexMatrix {
    let (q, p) = (params.q(), params.p());
    let p3 = p.powi(3);
    ComplexMatrix::diagonal(&[q * q / p3, q, p3].map(re))
}

/// Quantum determinant of `R(q, p, ν)` in the R-block representation.
///
/// The product `T₁T₂T₃ = R₁₄R₂₄R₃₄` on `(ℂ³)^{⊗3} ⊗ ℂ³_aux` is compressed by
/// the q-antisymmetrizer on slots 1–3; the compression factorizes as
/// `P⁽⁻⁾₁₂₃ ⊗ D` and `D` is returned.
pub fn qdet_of_r(params: &ModelParameters) -> Result<ComplexMatrix> {
    let r = cg_r_explicit(params);
    let anti = q_antisymmetrizer(params)?;
    let product = (0..3).try_fold(ComplexMatrix::identity(81), |acc, slot| {
        embed_pair(&r, slot, 3, 4, N, DEFAULT_DIM_CAP).map(|t| &acc * &t)
    })?;
    let proj = kron(&anti, &ComplexMatrix::identity(N));
    let compressed = &(&proj * &product) * &proj;
    // tr(anti) = 1, so tracing out slots 1–3 leaves D.
    let d = partial_trace_first(&compressed, 27)?;
    let factorization = residual_norm(&compressed, &kron(&anti, &d))?;
    if !(factorization <= tolerances::QDET) {
        return Err(Error::CompressionNotFactorized(factorization));
    }
    let off_diag = (0..N)
        .flat_map(|i| (0..N).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| d.at(i, j).norm())
        .fold(0.0, f64::max);
    let off_diag = off_diag / d.max_abs().max(1.0);
    if off_diag > tolerances::QDET {
        return Err(Error::NotDiagonal(off_diag));
    }
    Ok(d)
}

/// `qdet_of_r` against the closed form, entrywise relative to its largest entry.
pub fn check_qdet_closed_form(params: &ModelParameters) -> Result<CheckReport> {
    let d = qdet_of_r(params)?;
    let expected = qdet_closed_form(params);
    let dev = (&d - &expected).max_abs() / expected.max_abs().max(1.0);
    Ok(
        CheckReport::residual("qdet_closed_form", dev, tolerances::QDET)
            .with_params(params)
            .with_extra(
                "diagonal",
                Extra::complex(&(0..N).map(|i| d.at(i, i)).collect::<Vec<_>>()),
            ),
    )
}

/// The general-n diagonal `(1, x, x²)` with `x = q²(p/q)³`, checked as ratios.
pub fn check_qdet_ratios(params: &ModelParameters) -> Result<CheckReport> {
    let d = qdet_of_r(params)?;
    let (q, p) = (params.q(), params.p());
    let x = q * q * (p / q).powi(3);
    let first = d.at(0, 0);
    let dev = (0..N)
        .map(|i| {
            (d.at(i, i) / first - re(x.powi(i as i32))).norm() / x.powi(i as i32).abs().max(1.0)
        })
        .fold(0.0, f64::max);
    Ok(CheckReport::residual("qdet_general_n_ratios", dev, tolerances::QDET).with_params(params))
}

/// `(det_q T) T (det_q T)⁻¹ = (det_q R)⁻¹ T (det_q R)` in the R-block
/// representation.
///
/// With `T` stored as `R` (block `(i, j)` is `T_ij`), the left side is
/// `(I ⊗ D) R (I ⊗ D⁻¹)` (conjugation on the auxiliary index) and the right
/// side is `(D⁻¹ ⊗ I) R (D ⊗ I)` (the 3×3 matrix product on the block index).
pub fn check_qdet_exchange(params: &ModelParameters) -> Result<CheckReport> {
    let d = qdet_of_r(params)?;
    let d_inv = d
        .try_inverse()
        .map_err(|_| Error::Singular("quantum determinant of R"))?;
    let r = cg_r_explicit(params);
    let i3 = ComplexMatrix::identity(N);
    let lhs = &(&kron(&i3, &d) * &r) * &kron(&i3, &d_inv);
    let rhs = &(&kron(&d_inv, &i3) * &r) * &kron(&d, &i3);
    let residual = residual_norm(&lhs, &rhs)?;
    Ok(CheckReport::residual("qdet_exchange", residual, tolerances::QDET).with_params(params))
}

/// Anti-diagonal `C_{ij} = δ_{i, n+1−j}`.
pub fn anti_diagonal(n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |i, j| re(if i + j == n - 1 { 1.0 } else { 0.0 }))
}

/// `(C⊗C)·𝒫R𝒫·(C⊗C) = s·R` with best-fit scalar `s`; passes when the
/// residual is within tolerance and `s = 1`.
pub fn check_star_structure(params: &ModelParameters) -> Result<CheckReport> {
    let r = cg_r_explicit(params);
    let cc = kron(&anti_diagonal(N), &anti_diagonal(N));
    let perm = permutation_operator(N);
    let x = &(&(&(&cc * &perm) * &r) * &perm) * &cc;
    let inner = |a: &ComplexMatrix, b: &ComplexMatrix| -> C64 {
        a.as_inner()
            .iter()
            .zip(b.as_inner().iter())
            .map(|(u, v)| u.conj() * v)
            .sum()
    };
    let s = inner(&r, &x) / inner(&r, &r);
    let residual = residual_norm(&x, &r.scale(s))?;
    let scalar_ok = (s - re(1.0)).norm() <= tolerances::STAR_SCALAR;
    Ok(
        CheckReport::residual("star_structure", residual, tolerances::STAR)
            .with_params(params)
            .require(scalar_ok)
            .with_extra("scalar", Extra::complex(&[s])),
    )
}

/// `Ř(u) = (u − u⁻¹)Ř + ωu⁻¹I`.
pub fn baxterize(params: &ModelParameters, u: C64) -> Result<ComplexMatrix> {
    if u == C64::new(0.0, 0.0) || !u.is_finite() {
        return Err(Error::InvalidParameter(
            "spectral parameter must be finite and nonzero".into(),
        ));
    }
    let r_check = braid(&cg_r_explicit(params), N);
    let id = ComplexMatrix::identity(N * N);
    Ok(&r_check.scale(u - u.inv()) + &id.scale(re(params.omega()) * u.inv()))
}

/// The other displayed form, `uŘ − u⁻¹Ř⁻¹`, with an explicit inverse.
pub fn baxterize_via_inverse(params: &ModelParameters, u: C64) -> Result<ComplexMatrix> {
    if u == C64::new(0.0, 0.0) || !u.is_finite() {
        return Err(Error::InvalidParameter(
            "spectral parameter must be finite and nonzero".into(),
        ));
    }
    let r_check = braid(&cg_r_explicit(params), N);
    let inv = r_check.try_inverse()?;
    Ok(&r_check.scale(u) - &inv.scale(u.inv()))
}

pub fn check_baxterization_forms(params: &ModelParameters, u: C64) -> Result<CheckReport> {
    let a = baxterize(params, u)?;
    let b = baxterize_via_inverse(params, u)?;
    Ok(CheckReport::residual(
        "baxterization_forms",
        residual_norm(&a, &b)?,
        tolerances::BAXTER_FORMS,
    )
    .with_params(params)
    .with_param("u_re", u.re)
    .with_param("u_im", u.im))
}

/// `Ř₁₂(u)Ř₂₃(uv)Ř₁₂(v) = Ř₂₃(v)Ř₁₂(uv)Ř₂₃(u)`.
pub fn check_spectral_ybe(params: &ModelParameters, u: C64, v: C64) -> Result<CheckReport> {
    let i3 = ComplexMatrix::identity(N);
    let at12 = |x: C64| baxterize(params, x).map(|m| kron(&m, &i3));
    let at23 = |x: C64| baxterize(params, x).map(|m| kron(&i3, &m));
    let lhs = &(&at12(u)? * &at23(u * v)?) * &at12(v)?;
    let rhs = &(&at23(v)? * &at12(u * v)?) * &at23(u)?;
    Ok(CheckReport::residual(
        "spectral_yang_baxter",
        residual_norm(&lhs, &rhs)?,
        tolerances::SPECTRAL_YBE,
    )
    .with_params(params)
    .with_param("u_re", u.re)
    .with_param("v_re", v.re))
}

/// Twisted against explicit construction of `R(q, p, ν)`.
pub fn check_twist_identity(params: &ModelParameters) -> Result<CheckReport> {
    let residual = residual_norm(&cg_r_twisted(params)?, &cg_r_explicit(params))?;
    Ok(CheckReport::residual("twist_identity", residual, tolerances::TWIST).with_params(params))
}

/// `𝒫·R^{(F)} = F·Ř·F⁻¹`: the twist acts on the braid form by similarity.
pub fn check_braid_similarity(params: &ModelParameters) -> Result<CheckReport> {
    let (f, _) = twist_f(params);
    let f_inv = f.try_inverse()?;
    let lhs = braid(&cg_r_twisted(params)?, N);
    let rhs = &(&f * &braid(&standard_r(params.q(), N)?, N)) * &f_inv;
    Ok(CheckReport::residual(
        "braid_twist_similarity",
        residual_norm(&lhs, &rhs)?,
        tolerances::TWIST,
    )
    .with_params(params))
}

/// Hecke relation plus projector identities; ranks must be `(6, 3)`.
pub fn check_hecke(params: &ModelParameters) -> Result<CheckReport> {
    let dec = hecke_decomposition(&cg_r_explicit(params), params.q())?;
    let residual = dec.hecke_residual.max(dec.projector_residual(params.q()));
    let ranks_ok = dec.rank_plus == N * (N + 1) / 2 && dec.rank_minus == N * (N - 1) / 2;
    Ok(CheckReport::residual("hecke", residual, tolerances::HECKE)
        .with_params(params)
        .require(ranks_ok)
        .with_extra("rank_plus", Extra::Integer(dec.rank_plus as i64))
        .with_extra("rank_minus", Extra::Integer(dec.rank_minus as i64)))
}

/// Spectrum of `Ř` equals `{q ×6, −q⁻¹ ×3}`.
pub fn check_hecke_spectrum(params: &ModelParameters) -> Result<CheckReport> {
    let q = params.q();
    let spec = eigenvalues(&braid(&cg_r_explicit(params), N))?;
    let mut expected = vec![re(q); 6];
    expected.extend([re(-q.recip()); 3]);
    let (ok, dev) = spectra_match(
        &spec,
        &Spectrum::new(expected, spec.scale),
        tolerances::HECKE_SPECTRUM,
    )?;
    Ok(CheckReport::residual(
        "hecke_spectrum",
        dev,
        tolerances::HECKE_SPECTRUM * spec.scale.max(1.0),
    )
    .with_params(params)
    .require(ok)
    .with_extra("eigenvalues", Extra::complex(&spec.sorted())))
}

/// Spectra of the twisted and standard braid matrices coincide.
pub fn check_braid_spectra(params: &ModelParameters) -> Result<CheckReport> {
    let cg = eigenvalues(&braid(&cg_r_explicit(params), N))?;
    let std = eigenvalues(&braid(&standard_r(params.q(), N)?, N))?;
    let (ok, dev) = spectra_match(&cg, &std, tolerances::BRAID_SPECTRA)?;
    Ok(CheckReport::residual(
        "braid_spectra_vs_standard",
        dev,
        tolerances::BRAID_SPECTRA * cg.scale.max(1.0),
    )
    .with_params(params)
    .require(ok))
}

/// `‖Ř − Ř†‖_F`, large whenever `ν ≠ 0`.
pub fn non_hermiticity(params: &ModelParameters) -> f64 {
    let r_check = braid(&cg_r_explicit(params), N);
    (&r_check - &r_check.adjoint()).frobenius_norm()
}

pub fn check_non_hermiticity(params: &ModelParameters) -> CheckReport {
    let gap = non_hermiticity(params);
    CheckReport::verdict("braid_non_hermitian", gap > tolerances::NON_HERMITIAN)
        .with_params(params)
        .with_extra("hermiticity_defect", Extra::Scalar(gap))
}

/// Full CG braid matrix at the regularity point, `Ř(1) = ωI`.
pub fn check_regularity(params: &ModelParameters) -> Result<CheckReport> {
    let at_one = baxterize(params, re(1.0))?;
    let expected = ComplexMatrix::identity(N * N).scale_re(params.omega());
    let exact = at_one == expected;
    Ok(CheckReport::verdict("regularity", exact)
        .with_params(params)
        .with_extra(
            "max_deviation",
            Extra::Scalar((&at_one - &expected).max_abs()),
        ))
}
