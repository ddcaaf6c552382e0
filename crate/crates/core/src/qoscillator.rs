//! The covariant q-oscillator: generators `(A, K, A†) = (x₁, x₂, x₃)` with
//!
//! ```text
//! KA = pq·AK,   KA† = (pq)⁻¹·A†K,   AA† − p⁻²A†A = νK²
//! ```
//!
//! realized by weighted shifts on the truncated ladder `e₀ … e_{D−1}`:
//! `K e_n = κ₀(pq)^{−n} e_n`, `A e_n = α_n e_{n−1}` with
//! `α²_{n+1} = p⁻²α²_n + νκ₀²(pq)^{−2n}`, `α₀ = 0`.
//!
//! A finite ladder cannot satisfy the algebra on its top rung, so quadratic
//! relations are checked on `span{e₀ … e_{D−2}}` and the covariance relation
//! on `span{e₀ … e_{D−3}}`, since it reaches one rung further.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{kron, re, residual_norm, residual_slices, ComplexMatrix, C64};
use crate::params::ModelParameters;
use crate::report::{CheckReport, Extra};
use crate::rmatrix::{cg_r_explicit, r_blocks, N};
use crate::tolerances;

/// Relative tolerance for recognizing the special parameter families.
pub const CASE_TOLERANCE: f64 = 1e-12;

/// `[n]_x = 1 + x + … + x^{n−1}`.
pub fn q_number(n: usize, x: f64) -> f64 {
    (0..n).map(|k| x.powi(k as i32)).sum()
}

/// Closed form `α²_n = νκ₀² p^{−2(n−1)} [n]_{q⁻²}` of the ladder recursion.
pub fn ladder_weight_closed_form(n: usize, q: f64, p: f64, nu: f64, kappa0: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    nu * kappa0 * kappa0 * p.powi(-2 * (n as i32 - 1)) * q_number(n, q.powi(-2))
}

/// `α²_n` for `n = 0 … d−1` from the recursion.
pub fn ladder_weights_squared(d: usize, q: f64, p: f64, nu: f64, kappa0: f64) -> Vec<f64> {
    let pq = p * q;
    let mut out = Vec::with_capacity(d);
    out.push(0.0);
    for n in 0..d.saturating_sub(1) {
        let prev = out[n];
        out.push(prev / (p * p) + nu * kappa0 * kappa0 * pq.powi(-2 * n as i32));
    }
    out
}

/// A truncated-ladder realization of the oscillator.
#[derive(Debug, Clone)]
pub struct FockRealization {
    params: ModelParameters,
    kappa0: f64,
    star: bool,
    a: ComplexMatrix,
    k: ComplexMatrix,
    adag: ComplexMatrix,
}

impl FockRealization {
    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn params(&self) -> &ModelParameters {
        &self.params
    }

    pub fn kappa0(&self) -> f64 {
        self.kappa0
    }

    /// `λ = 1 + ln p / ln q`, undefined at `q = 1`.
    pub fn lambda(&self) -> Option<f64> {
        let lnq = self.params.q().ln();
        (lnq != 0.0).then(|| 1.0 + self.params.p().ln() / lnq)
    }

    /// Whether `A†` is the conjugate transpose of `A` (requires `ν ≥ 0`).
    pub fn is_star(&self) -> bool {
        self.star
    }

    pub fn a(&self) -> &ComplexMatrix {
        &self.a
    }

    pub fn k(&self) -> &ComplexMatrix {
        &self.k
    }

    pub fn adag(&self) -> &ComplexMatrix {
        &self.adag
    }

    /// `(x₁, x₂, x₃) = (A, K, A†)`.
    pub fn generators(&self) -> [&ComplexMatrix; 3] {
        [&self.a, &self.k, &self.adag]
    }

    /// Copy with `α_level` shifted by `delta` in both `A` and `A†`.
    pub fn perturbed(&self, level: usize, delta: f64) -> Self {
        let mut out = self.clone();
        if level >= 1 && level < self.dim() {
            *out.a.at_mut(level - 1, level) += re(delta);
            *out.adag.at_mut(level, level - 1) += re(delta);
        }
        out
    }
}

fn validate_ladder(d: usize, q: f64, p: f64, kappa0: f64) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!(
            "ladder dimension must be at least 2, got {d}"
        )));
    }
    if !(q > 0.0 && p > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "q and p must be positive (q={q}, p={p})"
        )));
    }
    if !(kappa0 > 0.0 && kappa0.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "kappa0 must be positive, got {kappa0}"
        )));
    }
    Ok(())
}

/// Hermitian weighted-shift realization; needs `ν ≥ 0`.
pub fn build_fock(d: usize, q: f64, p: f64, nu: f64, kappa0: f64) -> Result<FockRealization> {
    build_fock_realization(d, q, p, nu, kappa0, false)
}

/// As [`build_fock`], but with `allow_non_star` a negative `ν` yields a
/// realization with imaginary weights and `A†` the plain transpose of `A`;
/// the relations hold but there is no *-structure.
pub fn build_fock_realization(
    d: usize,
    q: f64,
    p: f64,
    nu: f64,
    kappa0: f64,
    allow_non_star: bool,
) -> Result<FockRealization> {
    validate_ladder(d, q, p, kappa0)?;
    let params = ModelParameters::new(q, p, nu)?;
    let weights = ladder_weights_squared(d, q, p, nu, kappa0);
    let star = weights.iter().all(|&w| w >= 0.0);
    if !star && !allow_non_star {
        return Err(Error::NoStarRealization(format!(
            "alpha_1^2 = nu*kappa0^2 = {} < 0",
            nu * kappa0 * kappa0
        )));
    }
    // At the Arik–Coon point K is built exactly central.
    let pq = if (p * q - 1.0).abs() <= CASE_TOLERANCE {
        1.0
    } else {
        p * q
    };
    let k = ComplexMatrix::diagonal(
        &(0..d)
            .map(|n| re(kappa0 * pq.powi(-(n as i32))))
            .collect::<Vec<_>>(),
    );
    let mut a = ComplexMatrix::zeros(d);
    for n in 1..d {
        *a.at_mut(n - 1, n) = C64::new(weights[n], 0.0).sqrt();
    }
    let adag = if star { a.adjoint() } else { a.transpose() };
    Ok(FockRealization {
        params,
        kappa0,
        star,
        a,
        k,
        adag,
    })
}

/// Relative residual of `lhs = rhs` restricted to the first `safe` basis vectors.
fn restricted(lhs: &ComplexMatrix, rhs: &ComplexMatrix, safe: usize) -> f64 {
    if safe == 0 {
        return 0.0;
    }
    residual_slices(&lhs.leading_columns(safe), &rhs.leading_columns(safe))
}

/// Residuals of the three defining relations on `span{e₀ … e_{D−2}}`.
pub fn oscillator_relation_residuals(
    a: &ComplexMatrix,
    k: &ComplexMatrix,
    adag: &ComplexMatrix,
    params: &ModelParameters,
    safe: impl Fn(&ComplexMatrix, &ComplexMatrix) -> f64,
) -> [f64; 3] {
    let (p, q, nu) = (params.p(), params.q(), params.nu());
    let pq = p * q;
    let ka = k * a;
    let ak = a * k;
    let kad = k * adag;
    let adk = adag * k;
    let aad = a * adag;
    let ada = adag * a;
    let k2 = k * k;
    [
        safe(&ka, &ak.scale_re(pq)),
        safe(&kad, &adk.scale_re(pq.recip())),
        safe(&aad, &(&ada.scale_re(p.powi(-2)) + &k2.scale_re(nu))),
    ]
}

pub fn check_oscillator_relations(f: &FockRealization) -> CheckReport {
    let safe = f.dim() - 1;
    let res = oscillator_relation_residuals(f.a(), f.k(), f.adag(), f.params(), |l, r| {
        restricted(l, r, safe)
    });
    let worst = res.iter().copied().fold(0.0, f64::max);
    CheckReport::residual("oscillator_relations", worst, tolerances::OSCILLATOR)
        .with_params(f.params())
        .with_param("dim", f.dim() as f64)
        .with_extra("relation_residuals", Extra::Scalars(res.to_vec()))
}

/// Recursion against the closed form of the ladder weights, max relative deviation.
pub fn check_ladder_closed_form(d: usize, q: f64, p: f64, nu: f64, kappa0: f64) -> CheckReport {
    let weights = ladder_weights_squared(d, q, p, nu, kappa0);
    let dev = weights
        .iter()
        .enumerate()
        .map(|(n, w)| {
            let exact = ladder_weight_closed_form(n, q, p, nu, kappa0);
            (w - exact).abs() / exact.abs().max(f64::MIN_POSITIVE).max(w.abs())
        })
        .filter(|x| x.is_finite())
        .fold(0.0, f64::max);
    CheckReport::residual("ladder_closed_form", dev, tolerances::LADDER_CLOSED_FORM)
        .with_param("q", q)
        .with_param("p", p)
        .with_param("nu", nu)
        .with_param("dim", d as f64)
}

fn ensure_matching(f: &FockRealization, r: &ComplexMatrix) -> Result<()> {
    if r.dim() != N * N {
        return Err(Error::DimensionMismatch {
            expected: N * N,
            found: r.dim(),
        });
    }
    let mismatch = residual_norm(r, &cg_r_explicit(f.params()))?;
    // Loose gate: only catches an R-matrix built for different parameters.
    if mismatch > 1e-6 {
        return Err(Error::ParameterMismatch(mismatch));
    }
    Ok(())
}

/// `R X₁X₂ = q X₂X₁` componentwise on `span{e₀ … e_{D−3}}`.
///
/// Component `(i, k)` compares `Σ_{jl} R_{ik,jl} x_j x_l` with `q x_k x_i`;
/// the reported residual is the largest component residual.
pub fn check_rxx_relation(f: &FockRealization, r: &ComplexMatrix) -> Result<CheckReport> {
    ensure_matching(f, r)?;
    let x = f.generators();
    let q = f.params().q();
    let safe = f.dim().saturating_sub(2);
    let products: Vec<Vec<ComplexMatrix>> = (0..N)
        .map(|j| (0..N).map(|l| x[j] * x[l]).collect())
        .collect();
    let mut worst: f64 = 0.0;
    for i in 0..N {
        for k in 0..N {
            let mut lhs = ComplexMatrix::zeros(f.dim());
            for j in 0..N {
                for l in 0..N {
                    let coeff = r.at(i * N + k, j * N + l);
                    if coeff != C64::new(0.0, 0.0) {
                        lhs = &lhs + &products[j][l].scale(coeff);
                    }
                }
            }
            let rhs = products[k][i].scale_re(q);
            worst = worst.max(restricted(&lhs, &rhs, safe));
        }
    }
    Ok(
        CheckReport::residual("rxx_relation", worst, tolerances::RXX)
            .with_params(f.params())
            .with_param("dim", f.dim() as f64)
            .with_extra("safe_levels", Extra::Integer(safe as i64)),
    )
}

/// `‖[K, A]‖` and `‖[K, A†]‖`, exactly zero at the Arik–Coon point.
pub fn check_k_centrality(f: &FockRealization) -> CheckReport {
    let ka = f.k().commutator(f.a()).max_abs();
    let kad = f.k().commutator(f.adag()).max_abs();
    CheckReport::residual("arik_coon_centrality", ka.max(kad), 0.0).with_params(f.params())
}

/// Arik–Coon generators with `a a† − q² a† a = 1`:
/// `a e_n = √[n]_{q²} e_{n−1}`.
pub fn arik_coon_generators(d: usize, q: f64) -> (ComplexMatrix, ComplexMatrix) {
    let mut a = ComplexMatrix::zeros(d);
    for n in 1..d {
        *a.at_mut(n - 1, n) = re(q_number(n, q * q).sqrt());
    }
    let adag = a.adjoint();
    (a, adag)
}

/// `a a† − q² a† a = 1` on `span{e₀ … e_{D−2}}`.
pub fn check_arik_coon_relation(d: usize, q: f64) -> CheckReport {
    let (a, adag) = arik_coon_generators(d, q);
    let lhs = &(&a * &adag) - &(&adag * &a).scale_re(q * q);
    CheckReport::residual(
        "arik_coon_relation",
        restricted(&lhs, &ComplexMatrix::identity(d), d - 1),
        tolerances::OSCILLATOR,
    )
    .with_param("q", q)
    .with_param("dim", d as f64)
}

fn number_power(d: usize, base: f64, exponent_per_level: f64) -> ComplexMatrix {
    ComplexMatrix::diagonal(
        &(0..d)
            .map(|n| re(base.powf(exponent_per_level * n as f64)))
            .collect::<Vec<_>>(),
    )
}

/// `a(λ) = q^{−λN} a`, `a†(λ) = a† q^{−λN}`, with `K = ν^{−1/2} q^{−λN}` so
/// that `K² = ν⁻¹ q^{−2λN}`. The result is the oscillator at
/// `p = q^{λ−1}`, `κ₀ = ν^{−1/2}`.
pub fn arik_coon_transform(d: usize, q: f64, lambda: f64, nu: f64) -> Result<FockRealization> {
    if !(nu > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "nu must be positive, got {nu}"
        )));
    }
    let p = q.powf(lambda - 1.0);
    let kappa0 = nu.powf(-0.5);
    validate_ladder(d, q, p, kappa0)?;
    let (a, adag) = arik_coon_generators(d, q);
    let damp = number_power(d, q, -lambda);
    Ok(FockRealization {
        params: ModelParameters::new(q, p, nu)?,
        kappa0,
        star: true,
        a: &damp * &a,
        k: damp.scale_re(kappa0),
        adag: &adag * &damp,
    })
}

/// `a(λ)a†(λ) − q^{2(1−λ)} a†(λ)a(λ) = q^{−2λN}` on `span{e₀ … e_{D−2}}`.
pub fn check_lambda_relation(d: usize, q: f64, lambda: f64) -> Result<CheckReport> {
    let f = arik_coon_transform(d, q, lambda, 1.0)?;
    let lhs = &(f.a() * f.adag()) - &(f.adag() * f.a()).scale_re(q.powf(2.0 * (1.0 - lambda)));
    let rhs = number_power(d, q, -2.0 * lambda);
    Ok(CheckReport::residual(
        "lambda_relation",
        restricted(&lhs, &rhs, d - 1),
        tolerances::OSCILLATOR,
    )
    .with_param("q", q)
    .with_param("lambda", lambda)
    .with_param("dim", d as f64))
}

/// Entrywise agreement of the λ-transformed Arik–Coon generators with the
/// weighted-shift realization at `p = q^{λ−1}`, `κ₀ = ν^{−1/2}`.
pub fn check_lambda_consistency(d: usize, q: f64, lambda: f64, nu: f64) -> Result<CheckReport> {
    let t = arik_coon_transform(d, q, lambda, nu)?;
    let f = build_fock(d, q, q.powf(lambda - 1.0), nu, nu.powf(-0.5))?;
    let dev = t
        .generators()
        .iter()
        .zip(f.generators())
        .map(|(x, y)| (*x - y).max_abs() / x.max_abs().max(1.0))
        .fold(0.0, f64::max);
    Ok(
        CheckReport::residual("lambda_transform", dev, tolerances::LAMBDA_TRANSFORM)
            .with_params(f.params())
            .with_param("lambda", lambda)
            .with_param("dim", d as f64),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CaseLabel {
    ClassicalNonstandard,
    ArikCoon,
    MacfarlaneBiedenharn,
    CremmerGervais,
    Generic,
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseLabel::ClassicalNonstandard => "ClassicalNonstandard",
            CaseLabel::ArikCoon => "ArikCoon",
            CaseLabel::MacfarlaneBiedenharn => "MacfarlaneBiedenharn",
            CaseLabel::CremmerGervais => "CremmerGervais",
            CaseLabel::Generic => "Generic",
        };
        f.write_str(s)
    }
}

/// The special generator choice selected by `(q, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OscillatorCase {
    /// Highest-priority match, or `Generic`.
    pub label: CaseLabel,
    /// Every matching special case, in priority order.
    pub matches: Vec<CaseLabel>,
}

fn rel_close(a: f64, b: f64) -> bool {
    (a - b).abs() <= CASE_TOLERANCE * a.abs().max(b.abs()).max(1.0)
}

/// Priority: ClassicalNonstandard > ArikCoon > MacfarlaneBiedenharn > CremmerGervais.
pub fn classify_case(q: f64, p: f64) -> OscillatorCase {
    let matches: Vec<CaseLabel> = [
        (CaseLabel::ClassicalNonstandard, rel_close(q, 1.0)),
        (CaseLabel::ArikCoon, rel_close(p * q, 1.0)),
        (CaseLabel::MacfarlaneBiedenharn, rel_close(p, q.powf(-0.5))),
        (CaseLabel::CremmerGervais, rel_close(p.powi(3), q)),
    ]
    .into_iter()
    .filter_map(|(label, hit)| hit.then_some(label))
    .collect();
    OscillatorCase {
        label: matches.first().copied().unwrap_or(CaseLabel::Generic),
        matches,
    }
}

/// Coaction `X'_i = Σ_j T_ij ⊗ x_j` with `T` the R-blocks on an auxiliary
/// `ℂ³`; the primed generators must satisfy the same three relations on
/// `ℂ³ ⊗ span{e₀ … e_{D−2}}`.
pub fn check_coaction_covariance(f: &FockRealization, r: &ComplexMatrix) -> Result<CheckReport> {
    ensure_matching(f, r)?;
    let t = r_blocks(r);
    let x = f.generators();
    let primed: Vec<ComplexMatrix> = (0..N)
        .map(|i| {
            (0..N)
                .map(|j| kron(&t[i][j], x[j]))
                .reduce(|acc, m| &acc + &m)
                .expect("three terms")
        })
        .collect();
    let d = f.dim();
    let keep: Vec<usize> = (0..N * d).filter(|col| col % d <= d - 2).collect();
    let safe = |lhs: &ComplexMatrix, rhs: &ComplexMatrix| {
        let pick = |m: &ComplexMatrix| -> Vec<C64> {
            (0..m.dim())
                .flat_map(|row| keep.iter().map(move |&col| m.at(row, col)))
                .collect()
        };
        residual_slices(&pick(lhs), &pick(rhs))
    };
    let res = oscillator_relation_residuals(&primed[0], &primed[1], &primed[2], f.params(), safe);
    let worst = res.iter().copied().fold(0.0, f64::max);
    Ok(
        CheckReport::residual("coaction_covariance", worst, tolerances::COACTION)
            .with_params(f.params())
            .with_param("dim", d as f64)
            .with_extra("relation_residuals", Extra::Scalars(res.to_vec())),
    )
}

/// `K = K†`, and `C·X = X*` componentwise: reversal maps `(A, K, A†)` to
/// `(A†, K, A)` where `*` is the conjugate transpose. Exact for a star
/// realization.
pub fn check_star_consistency(f: &FockRealization) -> CheckReport {
    let x = f.generators();
    let reversed = [x[2], x[1], x[0]];
    let dev = reversed
        .iter()
        .zip(x)
        .map(|(cx, xi)| (*cx - &xi.adjoint()).max_abs())
        .fold(0.0, f64::max);
    CheckReport::residual("star_consistency", dev, 0.0)
        .with_params(f.params())
        .with_extra("star_realization", Extra::Flag(f.is_star()))
}
