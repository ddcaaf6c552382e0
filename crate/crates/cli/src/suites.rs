//! Named check suites, run point by point over the configured grid.

use cgtwist_core::linalg::c;
use cgtwist_core::qoscillator::{self, CaseLabel};
use cgtwist_core::rmatrix::{self, N};
use cgtwist_core::spinchain::{self, default_spectral_points, ChainSpec};
use cgtwist_core::{tolerances, Boundary, CheckReport, Extra, ModelParameters, Result};
use rayon::prelude::*;

use crate::config::RunConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Rmatrix,
    Oscillator,
    Spinchain,
    All,
}

/// Test-only corruption of inputs, to exercise failing verdicts.
#[cfg(feature = "tamper")]
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Tamper {
    /// Perturbs one entry of R by 1e-3 before the Yang–Baxter check.
    Ybe,
}

pub const RMATRIX_CHECKS: &[&str] = &[
    "twist_identity",
    "yang_baxter",
    "hecke",
    "hecke_spectrum",
    "braid_spectra_vs_standard",
    "braid_twist_similarity",
    "braid_non_hermitian",
    "q_antisymmetrizer",
    "qdet_closed_form",
    "qdet_general_n_ratios",
    "qdet_exchange",
    "star_structure",
    "baxterization_forms",
    "spectral_yang_baxter",
    "regularity",
];

pub const OSCILLATOR_CHECKS: &[&str] = &[
    "oscillator_relations",
    "ladder_closed_form",
    "rxx_relation",
    "coaction_covariance",
    "star_consistency",
    "arik_coon_centrality",
    "arik_coon_relation",
    "lambda_relation",
    "lambda_transform",
];

pub const SPINCHAIN_CHECKS: &[&str] = &[
    "density_table",
    "transfer_commuting",
    "reference_state",
    "translation_covariance",
    "hamiltonian_from_transfer",
    "twisted_vs_standard_spectra",
    "spectrum_reality",
];

/// Every check name a suite can emit.
pub fn check_names(suite: Suite) -> Vec<&'static str> {
    match suite {
        Suite::Rmatrix => RMATRIX_CHECKS.to_vec(),
        Suite::Oscillator => OSCILLATOR_CHECKS.to_vec(),
        Suite::Spinchain => SPINCHAIN_CHECKS.to_vec(),
        Suite::All => [RMATRIX_CHECKS, OSCILLATOR_CHECKS, SPINCHAIN_CHECKS].concat(),
    }
}

/// A check that could not be evaluated counts as a failure.
fn settle(name: &str, params: &ModelParameters, outcome: Result<CheckReport>) -> CheckReport {
    outcome.unwrap_or_else(|e| {
        CheckReport::verdict(name, false)
            .with_params(params)
            .with_extra("error", Extra::Text(e.to_string()))
    })
}

/// Largest dimension any suite builds: the monodromy on `aux ⊗ sites`, or
/// the coaction on `ℂ³ ⊗ ℂ^D`.
pub fn required_dim(suite: Suite, cfg: &RunConfig) -> usize {
    let chain = cfg
        .lengths
        .iter()
        .map(|&l| N.saturating_pow(l as u32 + 1))
        .max()
        .unwrap_or(0);
    match suite {
        Suite::Rmatrix => 27,
        Suite::Oscillator => N * cfg.coaction_dim.max(cfg.dim),
        Suite::Spinchain | Suite::All => chain.max(27),
    }
}

pub fn run_suite(suite: Suite, cfg: &RunConfig) -> Vec<CheckReport> {
    let points = cfg.points();
    points
        .par_iter()
        .map(|p| point_reports(suite, p, cfg))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .map(|r| cfg.apply_tolerance(r))
        .collect()
}

fn point_reports(suite: Suite, p: &ModelParameters, cfg: &RunConfig) -> Vec<CheckReport> {
    let mut out = Vec::new();
    if matches!(suite, Suite::Rmatrix | Suite::All) {
        out.extend(rmatrix_checks(p, cfg));
    }
    if matches!(suite, Suite::Oscillator | Suite::All) {
        out.extend(oscillator_checks(p, cfg));
    }
    if matches!(suite, Suite::Spinchain | Suite::All) {
        out.extend(spinchain_checks(p, cfg));
    }
    out
}

#[allow(unused_variables)]
fn ybe_input(p: &ModelParameters, cfg: &RunConfig) -> cgtwist_core::ComplexMatrix {
    let r = rmatrix::cg_r_explicit(p);
    #[cfg(feature = "tamper")]
    if cfg.tamper == Some(Tamper::Ybe) {
        let mut r = r;
        let v = r.entry(2, 4);
        r.set_entry(2, 4, v + c(1e-3, 0.0));
        return r;
    }
    r
}

pub fn rmatrix_checks(p: &ModelParameters, cfg: &RunConfig) -> Vec<CheckReport> {
    let u = c(0.7, 0.2);
    let v = c(1.9, -0.1);
    let mut out = vec![
        settle("twist_identity", p, rmatrix::check_twist_identity(p)),
        settle(
            "yang_baxter",
            p,
            rmatrix::check_ybe(&ybe_input(p, cfg), N).map(|r| r.with_params(p)),
        ),
        settle("hecke", p, rmatrix::check_hecke(p)),
        settle("hecke_spectrum", p, rmatrix::check_hecke_spectrum(p)),
        settle(
            "braid_spectra_vs_standard",
            p,
            rmatrix::check_braid_spectra(p),
        ),
        settle(
            "braid_twist_similarity",
            p,
            rmatrix::check_braid_similarity(p),
        ),
    ];
    if p.nu().abs() > tolerances::NON_HERMITIAN {
        out.push(rmatrix::check_non_hermiticity(p));
    }
    out.extend([
        settle("q_antisymmetrizer", p, rmatrix::check_q_antisymmetrizer(p)),
        settle("qdet_closed_form", p, rmatrix::check_qdet_closed_form(p)),
        settle("qdet_general_n_ratios", p, rmatrix::check_qdet_ratios(p)),
        settle("qdet_exchange", p, rmatrix::check_qdet_exchange(p)),
        settle("star_structure", p, rmatrix::check_star_structure(p)),
        settle(
            "baxterization_forms",
            p,
            rmatrix::check_baxterization_forms(p, u),
        ),
        settle(
            "spectral_yang_baxter",
            p,
            rmatrix::check_spectral_ybe(p, u, v),
        ),
        settle("regularity", p, rmatrix::check_regularity(p)),
    ]);
    out
}

/// `λ = 1 + ln p / ln q`, when the Arik–Coon transform applies.
fn lambda_of(p: &ModelParameters) -> Option<f64> {
    let lnq = p.q().ln();
    (lnq.abs() > 1e-12 && p.nu() > 0.0).then(|| 1.0 + p.p().ln() / lnq)
}

pub fn oscillator_checks(p: &ModelParameters, cfg: &RunConfig) -> Vec<CheckReport> {
    let (q, pp, nu) = (p.q(), p.p(), p.nu());
    let mut out = Vec::new();
    let case = qoscillator::classify_case(q, pp);
    let labels: Vec<String> = case.matches.iter().map(|l| l.to_string()).collect();
    let r = cgtwist_core::rmatrix::cg_r_explicit(p);
    match qoscillator::build_fock_realization(cfg.dim, q, pp, nu, 1.0, true) {
        Ok(f) => {
            out.push(
                qoscillator::check_oscillator_relations(&f)
                    .with_extra("case", Extra::Text(case.label.to_string()))
                    .with_extra("case_matches", Extra::Text(labels.join(","))),
            );
            out.push(settle(
                "rxx_relation",
                p,
                qoscillator::check_rxx_relation(&f, &r),
            ));
            if nu >= 0.0 {
                out.push(qoscillator::check_star_consistency(&f));
            }
            if case.matches.contains(&CaseLabel::ArikCoon) {
                out.push(qoscillator::check_k_centrality(&f));
            }
        }
        Err(e) => out.push(settle("oscillator_relations", p, Err(e))),
    }
    out.push(qoscillator::check_ladder_closed_form(
        cfg.dim, q, pp, nu, 1.0,
    ));
    let coaction = qoscillator::build_fock_realization(cfg.coaction_dim, q, pp, nu, 1.0, true)
        .and_then(|f| qoscillator::check_coaction_covariance(&f, &r));
    out.push(settle("coaction_covariance", p, coaction));
    out.push(qoscillator::check_arik_coon_relation(cfg.dim, q));
    if let Some(lambda) = lambda_of(p) {
        out.push(settle(
            "lambda_relation",
            p,
            qoscillator::check_lambda_relation(cfg.dim, q, lambda),
        ));
        out.push(settle(
            "lambda_transform",
            p,
            qoscillator::check_lambda_consistency(cfg.dim, q, lambda, nu),
        ));
    }
    out
}

pub fn spinchain_checks(p: &ModelParameters, cfg: &RunConfig) -> Vec<CheckReport> {
    let [u0, u1, u2] = default_spectral_points();
    let mut out = vec![settle(
        "density_table",
        p,
        spinchain::check_density_table(p),
    )];
    for &length in &cfg.lengths {
        let periodic = ChainSpec::with_cap(length, Boundary::Periodic, *p, cfg.cap);
        let spec = match periodic {
            Ok(s) => s,
            Err(e) => {
                out.push(settle("transfer_commuting", p, Err(e)));
                continue;
            }
        };
        out.push(settle(
            "transfer_commuting",
            p,
            spinchain::check_transfer_commuting(&spec, u0, u1),
        ));
        out.push(settle(
            "reference_state",
            p,
            spinchain::check_reference_state(&spec, u2),
        ));
        out.push(settle(
            "translation_covariance",
            p,
            spinchain::check_translation_covariance(&spec, u2),
        ));
        // t(1) vanishes with ω; the check is skipped, not failed.
        if p.omega().abs() >= tolerances::REGULARITY_OMEGA {
            out.push(settle(
                "hamiltonian_from_transfer",
                p,
                spinchain::check_hamiltonian_from_transfer(&spec),
            ));
        }
        for boundary in [Boundary::Open, Boundary::Periodic] {
            out.push(settle(
                "twisted_vs_standard_spectra",
                p,
                spinchain::compare_spectra_twisted_vs_standard(length, p, boundary, cfg.cap),
            ));
        }
        out.push(settle(
            "spectrum_reality",
            p,
            spinchain::check_spectrum_reality(length, p, cfg.cap),
        ));
    }
    out
}
