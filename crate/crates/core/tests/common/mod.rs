#![allow(dead_code)]

use cgtwist_core::{ComplexMatrix, ModelParameters, C64};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

pub fn config(cases: u32, seed: u64) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    }
}

/// q, p in [0.5, 2], nu in [-1, 1].
pub fn params() -> impl Strategy<Value = ModelParameters> {
    (0.5f64..2.0, 0.5f64..2.0, -1.0f64..1.0)
        .prop_map(|(q, p, nu)| ModelParameters::new(q, p, nu).unwrap())
}

pub fn star_params() -> impl Strategy<Value = ModelParameters> {
    (0.5f64..2.0, 0.5f64..2.0, 0.0f64..1.0)
        .prop_map(|(q, p, nu)| ModelParameters::new(q, p, nu).unwrap())
}

pub fn matrix(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n).prop_map(move |v| {
        ComplexMatrix::new(n, v.into_iter().map(|(a, b)| C64::new(a, b)).collect()).unwrap()
    })
}

/// Spectral parameter away from 0, with a small imaginary part.
pub fn spectral() -> impl Strategy<Value = C64> {
    (0.3f64..2.5, -0.4f64..0.4).prop_map(|(r, i)| C64::new(r, i))
}
