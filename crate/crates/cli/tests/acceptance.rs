//! Acceptance criteria 1–11, run in order with one PASS/FAIL line each.
//!
//! Tolerances are pinned here rather than taken from the core crate, so a
//! change there cannot loosen acceptance. Lines go straight to stdout so they
//! are visible without `--nocapture`.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use cgtwist_core::linalg::{eigenvalues, residual_norm, spectra_match};
use cgtwist_core::qoscillator::{self, build_fock_realization};
use cgtwist_core::rmatrix::{self, N};
use cgtwist_core::sampling::{parameter_grid, rng, DEFAULT_SEED};
use cgtwist_core::spinchain::{self, ChainSpec};
use cgtwist_core::{Boundary, ComplexMatrix, Extra, ModelParameters, Spectrum, C64};
use rand::Rng;

const CAP: usize = 6561;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

/// Largest value seen and whether every value stayed within `tol`.
#[derive(Default)]
struct Worst {
    max: f64,
    ok: bool,
    seen: usize,
}

impl Worst {
    fn new() -> Self {
        Self {
            max: 0.0,
            ok: true,
            seen: 0,
        }
    }

    fn add(&mut self, value: f64, tol: f64) {
        self.seen += 1;
        self.ok &= value <= tol;
        if value.is_nan() || value > self.max {
            self.max = value;
        }
    }
}

fn grid() -> Vec<ModelParameters> {
    parameter_grid(DEFAULT_SEED, 100)
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn twist_identity() -> Outcome {
    let (worst, took) = timed(|| {
        let mut w = Worst::new();
        for p in grid() {
            let r = rmatrix::cg_r_twisted(&p).unwrap();
            w.add(
                residual_norm(&r, &rmatrix::cg_r_explicit(&p)).unwrap(),
                1e-12,
            );
        }
        w
    });
    Outcome::new(
        worst.ok && took < Duration::from_secs(1),
        format!(
            "max residual {:.2e} over {} points, {:.2?}",
            worst.max, worst.seen, took
        ),
    )
}

fn yang_baxter() -> Outcome {
    let (worst, took) = timed(|| {
        let mut w = Worst::new();
        for p in grid() {
            w.add(
                rmatrix::ybe_residual(&rmatrix::cg_r_explicit(&p), N).unwrap(),
                1e-11,
            );
        }
        w
    });
    Outcome::new(
        worst.ok && took < Duration::from_secs(2),
        format!("max residual {:.2e}, {:.2?}", worst.max, took),
    )
}

fn hecke() -> Outcome {
    let mut relation = Worst::new();
    let mut spectrum = Worst::new();
    let mut ranks_ok = true;
    for p in grid() {
        let dec = rmatrix::hecke_decomposition(&rmatrix::cg_r_explicit(&p), p.q()).unwrap();
        relation.add(dec.hecke_residual, 1e-12);
        ranks_ok &= (dec.rank_plus, dec.rank_minus) == (6, 3);
        let q = p.q();
        let mut expected = vec![C64::new(q, 0.0); 6];
        expected.extend([C64::new(-1.0 / q, 0.0); 3]);
        let got = eigenvalues(&dec.r_check).unwrap();
        let (ok, dev) = spectra_match(&got, &Spectrum::new(expected, 0.0), 1e-9).unwrap();
        spectrum.add(if ok { dev } else { f64::INFINITY }, f64::MAX);
    }
    Outcome::new(
        relation.ok && ranks_ok && spectrum.ok,
        format!(
            "relation {:.2e}, ranks (6, 3) {}, spectrum deviation {:.2e}",
            relation.max,
            if ranks_ok { "everywhere" } else { "VIOLATED" },
            spectrum.max
        ),
    )
}

fn quantum_determinant() -> Outcome {
    let mut closed = Worst::new();
    let mut exchange = Worst::new();
    for p in grid() {
        let d = rmatrix::qdet_of_r(&p).unwrap();
        let expected = rmatrix::qdet_closed_form(&p);
        closed.add(
            (&d - &expected).max_abs() / expected.max_abs().max(1.0),
            1e-10,
        );
        exchange.add(rmatrix::check_qdet_exchange(&p).unwrap().residual, 1e-10);
    }
    let mut central = Worst::new();
    for q in [0.6_f64, 1.2, 1.9] {
        let p = ModelParameters::new(q, q.cbrt(), 0.5).unwrap();
        let d = rmatrix::qdet_of_r(&p).unwrap();
        central.add(
            (&d - &ComplexMatrix::identity(N).scale_re(q)).max_abs() / q.max(1.0),
            1e-10,
        );
    }
    Outcome::new(
        closed.ok && exchange.ok && central.ok,
        format!(
            "closed form {:.2e}, centrality point {:.2e}, exchange {:.2e}",
            closed.max, central.max, exchange.max
        ),
    )
}

fn star_structure() -> Outcome {
    let mut residual = Worst::new();
    let mut scalar = Worst::new();
    for p in grid() {
        let r = rmatrix::check_star_structure(&p).unwrap();
        residual.add(r.residual, 1e-12);
        let Some(Extra::Complex(s)) = r.extra.get("scalar") else {
            return Outcome::new(false, "no scalar reported");
        };
        scalar.add(C64::new(s[0][0] - 1.0, s[0][1]).norm(), 1e-10);
    }
    Outcome::new(
        residual.ok && scalar.ok,
        format!("residual {:.2e}, |s - 1| {:.2e}", residual.max, scalar.max),
    )
}

fn oscillator() -> Outcome {
    let mut relations = Worst::new();
    let mut rxx = Worst::new();
    for p in grid() {
        let f = build_fock_realization(8, p.q(), p.p(), p.nu(), 1.0, true).unwrap();
        relations.add(qoscillator::check_oscillator_relations(&f).residual, 1e-12);
        let r = qoscillator::check_rxx_relation(&f, &rmatrix::cg_r_explicit(&p)).unwrap();
        rxx.add(r.residual, 1e-11);
    }
    let mut lambda = Worst::new();
    for p in grid()
        .iter()
        .filter(|p| p.nu() > 0.0 && (p.q() - 1.0).abs() > 1e-3)
    {
        for l in [0.0, 0.5, 4.0 / 3.0] {
            lambda.add(
                qoscillator::check_lambda_consistency(8, p.q(), l, p.nu())
                    .unwrap()
                    .residual,
                1e-12,
            );
        }
    }
    let mut central = Worst::new();
    for q in [1.5, 0.8, 1.9] {
        let f = build_fock_realization(8, q, 1.0 / q, 1.0, 1.0, false).unwrap();
        central.add(qoscillator::check_k_centrality(&f).residual, 0.0);
    }
    Outcome::new(
        relations.ok && rxx.ok && lambda.ok && central.ok,
        format!(
            "relations {:.2e}, R x x {:.2e}, lambda {:.2e} ({} cases), K-centrality {:.1e}",
            relations.max, rxx.max, lambda.max, lambda.seen, central.max
        ),
    )
}

fn coaction() -> Outcome {
    let (worst, took) = timed(|| {
        let mut w = Worst::new();
        for p in grid() {
            let f = build_fock_realization(6, p.q(), p.p(), p.nu(), 1.0, true).unwrap();
            let r =
                qoscillator::check_coaction_covariance(&f, &rmatrix::cg_r_explicit(&p)).unwrap();
            w.add(r.residual, 1e-10);
        }
        w
    });
    Outcome::new(
        worst.ok && took < Duration::from_secs(10),
        format!("max residual {:.2e}, {:.2?}", worst.max, took),
    )
}

fn chain_construction() -> Outcome {
    let mut table = Worst::new();
    let mut regular = true;
    for p in grid() {
        table.add(spinchain::check_density_table(&p).unwrap().residual, 1e-12);
        let at_one = rmatrix::baxterize(&p, C64::new(1.0, 0.0)).unwrap();
        regular &= at_one == ComplexMatrix::identity(9).scale_re(p.omega());
    }
    let mut draw = rng(DEFAULT_SEED);
    let mut u_rand = || C64::new(draw.gen_range(0.3..2.5), draw.gen_range(-0.4..0.4));
    let points = &grid()[..5];

    let mut commuting = Worst::new();
    let spec = ChainSpec::new(3, Boundary::Periodic, points[0]).unwrap();
    for _ in 0..10 {
        let (u, v) = (u_rand(), u_rand());
        commuting.add(
            spinchain::check_transfer_commuting(&spec, u, v)
                .unwrap()
                .residual,
            1e-10,
        );
    }
    let mut reference = Worst::new();
    for length in 2..=4 {
        for p in points {
            let spec = ChainSpec::new(length, Boundary::Periodic, *p).unwrap();
            reference.add(
                spinchain::check_reference_state(&spec, u_rand())
                    .unwrap()
                    .residual,
                1e-10,
            );
        }
    }
    let mut log_derivative = Worst::new();
    for length in 2..=3 {
        for p in points.iter().filter(|p| p.omega().abs() >= 1e-3) {
            let spec = ChainSpec::new(length, Boundary::Periodic, *p).unwrap();
            log_derivative.add(
                spinchain::check_hamiltonian_from_transfer(&spec)
                    .unwrap()
                    .residual,
                1e-5,
            );
        }
    }
    Outcome::new(
        table.ok && regular && commuting.ok && reference.ok && log_derivative.ok,
        format!(
            "table {:.2e}, R(1) = omega I {}, commutator {:.2e}, reference {:.2e}, log-derivative {:.2e}",
            table.max,
            if regular { "exact" } else { "NOT exact" },
            commuting.max,
            reference.max,
            log_derivative.max
        ),
    )
}

fn open_spectra(length: usize, p: &ModelParameters) -> (bool, f64) {
    let spec = ChainSpec::new(length, Boundary::Open, *p).unwrap();
    let cg = eigenvalues(&spinchain::chain_hamiltonian(&spec).unwrap()).unwrap();
    let std = eigenvalues(&spinchain::standard_chain_hamiltonian(&spec).unwrap()).unwrap();
    spectra_match(&cg, &std, 1e-8).unwrap()
}

fn twisted_vs_standard() -> Outcome {
    let mut worst = Worst::new();
    let mut all_ok = true;
    for length in 2..=4 {
        for p in &grid()[..20] {
            let (ok, dev) = open_spectra(length, p);
            all_ok &= ok;
            worst.add(dev, f64::MAX);
        }
    }
    let spot_params = ModelParameters::new(1.3, 0.9, 0.5).unwrap();
    let ((spot_ok, spot_dev), took) = timed(|| open_spectra(5, &spot_params));
    let periodic =
        spinchain::compare_spectra_twisted_vs_standard(3, &grid()[0], Boundary::Periodic, CAP)
            .unwrap();
    let report_only = periodic.extra.get("asserted") == Some(&Extra::Flag(false));
    Outcome::new(
        all_ok && spot_ok && took < Duration::from_secs(10) && report_only,
        format!(
            "L = 2..4 max deviation {:.2e}; L = 5 deviation {:.2e} in {:.2?}; periodic report-only {}",
            worst.max, spot_dev, took, report_only
        ),
    )
}

fn non_hermitian_reality() -> Outcome {
    let mut imag = Worst::new();
    let mut defect_min = f64::INFINITY;
    let mut non_hermitian = true;
    for length in 2..=4 {
        for p in grid()[..20].iter().filter(|p| p.nu().abs() > 1e-6) {
            let spec = ChainSpec::new(length, Boundary::Open, *p).unwrap();
            let h = spinchain::chain_hamiltonian(&spec).unwrap();
            let defect = (&h - &h.adjoint()).frobenius_norm();
            defect_min = defect_min.min(defect);
            non_hermitian &= defect > 1e-6;
            let s = eigenvalues(&h).unwrap();
            imag.add(s.max_abs_imag() / h.frobenius_norm(), 1e-8);
        }
    }
    Outcome::new(
        non_hermitian && imag.ok,
        format!(
            "min ||H - H^dag|| {:.2e}, max |Im| / ||H|| {:.2e}",
            defect_min, imag.max
        ),
    )
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, threads: &str| {
        let path = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_cgtwist"))
            .args([
                "check",
                "--suite",
                "all",
                "--grid-points",
                "4",
                "--seed",
                "11",
                "--out",
            ])
            .arg(&path)
            .env("RAYON_NUM_THREADS", threads)
            .status()
            .unwrap();
        (status.code(), std::fs::read(path).unwrap())
    };
    let (c1, a) = run("a.json", "1");
    let (c2, b) = run("b.json", "4");
    let (c3, c) = run("c.json", "4");
    Outcome::new(
        c1 == Some(0) && c1 == c2 && c2 == c3 && a == b && b == c && !a.is_empty(),
        format!(
            "{} bytes, identical across 3 runs and thread counts: {}",
            a.len(),
            a == b && b == c
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 11] = [
        ("twist identity", twist_identity),
        ("Yang-Baxter equation", yang_baxter),
        ("Hecke relation, projector ranks, braid spectrum", hecke),
        ("quantum determinant", quantum_determinant),
        ("star structure", star_structure),
        ("oscillator relations", oscillator),
        ("coaction covariance", coaction),
        ("chain construction", chain_construction),
        (
            "twisted vs standard open-chain spectra",
            twisted_vs_standard,
        ),
        (
            "non-Hermitian chain with real spectrum",
            non_hermitian_reality,
        ),
        ("deterministic JSON", determinism),
    ];
    let mut failed = Vec::new();
    let mut out = std::io::stdout().lock();
    writeln!(out).unwrap();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = run();
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        writeln!(
            out,
            "acceptance {:>2} {verdict}  {name}: {}",
            i + 1,
            outcome.detail
        )
        .unwrap();
        if !outcome.pass {
            failed.push(i + 1);
        }
    }
    out.flush().unwrap();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
