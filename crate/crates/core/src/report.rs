use std::collections::BTreeMap;

use serde::Serialize;

use crate::linalg::C64;
use crate::params::ModelParameters;

/// Auxiliary payload attached to a [`CheckReport`].
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Extra {
    Flag(bool),
    Integer(i64),
    Scalar(f64),
    Text(String),
    Scalars(Vec<f64>),
    /// Complex values as `[re, im]` pairs.
    Complex(Vec<[f64; 2]>),
}

impl Extra {
    pub fn complex(values: &[C64]) -> Self {
        Extra::Complex(values.iter().map(|z| [z.re, z.im]).collect())
    }
}

/// Outcome of one named identity check at one parameter point.
///
/// For residual-style checks `pass ⇔ residual ≤ tolerance`. Rank and label
/// checks carry their verdict directly and report `residual = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub check_name: String,
    pub parameters: BTreeMap<String, f64>,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub extra: BTreeMap<String, Extra>,
    #[serde(skip)]
    residual_style: bool,
    #[serde(skip)]
    requirements_met: bool,
}

impl CheckReport {
    /// Residual-style report; NaN residuals fail.
    pub fn residual(name: &str, residual: f64, tolerance: f64) -> Self {
        Self {
            check_name: name.to_string(),
            parameters: BTreeMap::new(),
            residual,
            tolerance,
            pass: residual <= tolerance,
            extra: BTreeMap::new(),
            residual_style: true,
            requirements_met: true,
        }
    }

    /// Verdict-style report (ranks, labels); residual is the 0 sentinel.
    pub fn verdict(name: &str, pass: bool) -> Self {
        Self {
            check_name: name.to_string(),
            parameters: BTreeMap::new(),
            residual: 0.0,
            tolerance: 0.0,
            pass,
            extra: BTreeMap::new(),
            residual_style: false,
            requirements_met: pass,
        }
    }

    pub fn with_params(mut self, params: &ModelParameters) -> Self {
        for (k, v) in params.named() {
            self.parameters.insert(k.to_string(), v);
        }
        self
    }

    pub fn with_param(mut self, name: &str, value: f64) -> Self {
        self.parameters.insert(name.to_string(), value);
        self
    }

    pub fn with_extra(mut self, key: &str, value: Extra) -> Self {
        self.extra.insert(key.to_string(), value);
        self
    }

    /// Downgrades the verdict if an extra condition fails.
    pub fn require(mut self, condition: bool) -> Self {
        self.pass &= condition;
        self.requirements_met &= condition;
        self
    }

    pub fn is_residual_style(&self) -> bool {
        self.residual_style
    }

    /// Re-judges a residual-style report against `tolerance`; verdict-style
    /// reports are returned unchanged.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        if self.residual_style {
            self.tolerance = tolerance;
            self.pass = self.residual <= tolerance && self.requirements_met;
        }
        self
    }
}
