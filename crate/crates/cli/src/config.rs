//! Run configuration: a flat `key = value` file, overridden by flags.
//!
//! ```text
//! # comment
//! seed = 7
//! cap = 6561
//! format = json
//! lengths = 2,3
//! dim = 8
//! point = 1.3,0.8,0.5
//! point = 1.2,0.9,-0.4
//! tol = 1e-9            # every residual check
//! tol.yang_baxter = 1e-10
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use cgtwist_core::linalg::DEFAULT_DIM_CAP;
use cgtwist_core::sampling::{parameter_grid, DEFAULT_GRID_POINTS, DEFAULT_SEED};
use cgtwist_core::{CheckReport, ModelParameters};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => bail!("unknown format `{other}` (expected json, csv or text)"),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "text",
        })
    }
}

/// Where the parameter points come from.
#[derive(Debug, Clone, PartialEq)]
pub enum Grid {
    /// `count` seeded draws.
    Seeded(usize),
    Points(Vec<ModelParameters>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    /// Applies to every residual-style check without a named override.
    pub tolerance: Option<f64>,
    pub tolerances: BTreeMap<String, f64>,
    pub cap: usize,
    pub grid: Grid,
    pub lengths: Vec<usize>,
    /// Fock ladder dimension for the oscillator suite.
    pub dim: usize,
    /// Ladder dimension for the coaction check, which works on `ℂ³ ⊗ ℂ^D`.
    pub coaction_dim: usize,
    pub format: Format,
    #[cfg(feature = "tamper")]
    pub tamper: Option<crate::suites::Tamper>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            tolerance: None,
            tolerances: BTreeMap::new(),
            cap: DEFAULT_DIM_CAP,
            grid: Grid::Seeded(DEFAULT_GRID_POINTS),
            lengths: vec![2, 3],
            dim: 8,
            coaction_dim: 6,
            format: Format::Json,
            #[cfg(feature = "tamper")]
            tamper: None,
        }
    }
}

fn parse_num<T: FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: fmt::Display,
{
    value
        .trim()
        .parse()
        .map_err(|e| anyhow!("`{key}`: cannot parse `{value}`: {e}"))
}

pub fn parse_point(value: &str) -> Result<ModelParameters> {
    let parts: Vec<&str> = value.split(',').map(str::trim).collect();
    let [q, p, nu] = parts.as_slice() else {
        bail!("point `{value}` must be `q,p,nu`");
    };
    let (q, p, nu): (f64, f64, f64) =
        (parse_num("q", q)?, parse_num("p", p)?, parse_num("nu", nu)?);
    if !(q > 0.0 && p > 0.0) {
        bail!("point `{value}`: q and p must be positive");
    }
    Ok(ModelParameters::new(q, p, nu)?)
}

fn parse_tolerance(key: &str, value: &str) -> Result<f64> {
    let tol: f64 = parse_num(key, value)?;
    if !(tol >= 0.0 && tol.is_finite()) {
        bail!("`{key}`: tolerance must be a non-negative number, got {value}");
    }
    Ok(tol)
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in {}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        let mut points = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("line {}: expected `key = value`", n + 1))?;
            let (key, value) = (key.trim(), value.trim());
            let wrap = |e: anyhow::Error| e.context(format!("line {}", n + 1));
            match key {
                "seed" => cfg.seed = parse_num(key, value).map_err(wrap)?,
                "cap" => cfg.cap = parse_num(key, value).map_err(wrap)?,
                "dim" => cfg.dim = parse_num(key, value).map_err(wrap)?,
                "coaction_dim" => cfg.coaction_dim = parse_num(key, value).map_err(wrap)?,
                "format" => cfg.format = value.parse().map_err(wrap)?,
                "grid_points" => cfg.grid = Grid::Seeded(parse_num(key, value).map_err(wrap)?),
                "point" => points.push(parse_point(value).map_err(wrap)?),
                "lengths" => {
                    cfg.lengths = value
                        .split(',')
                        .map(|v| parse_num(key, v))
                        .collect::<Result<_>>()
                        .map_err(wrap)?
                }
                "tol" => cfg.tolerance = Some(parse_tolerance(key, value).map_err(wrap)?),
                _ => match key.strip_prefix("tol.") {
                    Some(name) if !name.is_empty() => {
                        cfg.tolerances
                            .insert(name.to_string(), parse_tolerance(key, value).map_err(wrap)?);
                    }
                    _ => bail!("line {}: unknown key `{key}`", n + 1),
                },
            }
        }
        if !points.is_empty() {
            cfg.grid = Grid::Points(points);
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim < 2 || self.coaction_dim < 2 {
            bail!("ladder dimension must be at least 2");
        }
        if let Some(&l) = self.lengths.iter().find(|&&l| l < 2) {
            bail!("chain length must be at least 2, got {l}");
        }
        if let Grid::Seeded(0) = self.grid {
            bail!("grid must contain at least one point");
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<ModelParameters> {
        match &self.grid {
            Grid::Seeded(count) => parameter_grid(self.seed, *count),
            Grid::Points(points) => points.clone(),
        }
    }

    /// Applies named and global tolerance overrides to a finished report.
    pub fn apply_tolerance(&self, report: CheckReport) -> CheckReport {
        match self
            .tolerances
            .get(&report.check_name)
            .or(self.tolerance.as_ref())
        {
            Some(&tol) => report.with_tolerance(tol),
            None => report,
        }
    }
}
