use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context, Result};
use cgtwist_cli::config::{parse_point, Format, Grid, RunConfig};
use cgtwist_cli::output::{self, RunInfo};
use cgtwist_cli::suites::Suite;
use cgtwist_cli::{commands, exit};
use cgtwist_core::sampling::DEFAULT_GRID_POINTS;
use cgtwist_core::{Boundary, CheckReport, Extra};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "cgtwist",
    version,
    about = "Numerical checks for the two-parameter twisted Cremmer-Gervais R-matrix",
    after_help = "Exit status: 0 all checks pass, 1 a check failed, 2 usage or configuration error.\n\
                  CSV output: reports as check_name,parameters,residual,tolerance,pass; \
                  spectra as re,im sorted ascending."
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Flat `key = value` config file; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Tolerance for every residual-style check.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Largest matrix dimension any job may build.
    #[arg(long, global = true)]
    cap: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Single parameter point (all three required together).
    #[arg(long, global = true, allow_negative_numbers = true)]
    q: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    p: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    nu: Option<f64>,
    /// Extra point `q,p,nu`; repeatable.
    #[arg(long = "point", global = true, allow_negative_numbers = true)]
    points: Vec<String>,
    /// Use the seeded grid of this many points.
    #[arg(long, global = true)]
    grid_points: Option<usize>,
    /// `default` selects the seeded 100-point grid.
    #[arg(long, global = true, value_enum)]
    grid: Option<GridChoice>,
    /// Record the wall-clock time in the JSON header (breaks byte-identical output).
    #[arg(long, global = true)]
    stamp: bool,
    #[cfg(feature = "tamper")]
    #[arg(long, global = true, value_enum, hide = true)]
    tamper: Option<cgtwist_cli::suites::Tamper>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GridChoice {
    Default,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BoundaryArg {
    Open,
    Periodic,
}

impl From<BoundaryArg> for Boundary {
    fn from(b: BoundaryArg) -> Self {
        match b {
            BoundaryArg::Open => Boundary::Open,
            BoundaryArg::Periodic => Boundary::Periodic,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a check suite over the parameter grid.
    Check {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Chain lengths for the spin-chain suite, e.g. `2,3`.
        #[arg(long, value_delimiter = ',')]
        lengths: Option<Vec<usize>>,
        /// Fock ladder dimension for the oscillator suite.
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Eigenvalues of the chain Hamiltonian.
    Spectrum {
        #[arg(short = 'L', long)]
        length: usize,
        #[arg(long, value_enum, default_value = "open")]
        boundary: BoundaryArg,
    },
    /// Twisted against standard chain spectra.
    Compare {
        #[arg(short = 'L', long)]
        length: usize,
        #[arg(long, value_enum, default_value = "open")]
        boundary: BoundaryArg,
    },
    /// Oscillator relations, covariance and case label on a Fock ladder.
    Oscillator {
        #[arg(long, default_value_t = 8)]
        dim: usize,
    },
}

fn build_config(g: &Global) -> Result<RunConfig> {
    let mut cfg = match &g.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = g.seed {
        cfg.seed = seed;
    }
    if let Some(tol) = g.tol {
        if !(tol >= 0.0 && tol.is_finite()) {
            bail!("--tol must be a non-negative number");
        }
        cfg.tolerance = Some(tol);
    }
    if let Some(cap) = g.cap {
        cfg.cap = cap;
    }
    if let Some(format) = g.format {
        cfg.format = format;
    }
    let mut points = Vec::new();
    match (g.q, g.p, g.nu) {
        (Some(q), Some(p), Some(nu)) => points.push(parse_point(&format!("{q},{p},{nu}"))?),
        (None, None, None) => {}
        _ => bail!("--q, --p and --nu must be given together"),
    }
    for spec in &g.points {
        points.push(parse_point(spec)?);
    }
    let seeded = g.grid.map(|_| DEFAULT_GRID_POINTS).or(g.grid_points);
    match (seeded, points.is_empty()) {
        (Some(_), false) => bail!("an explicit point and a seeded grid are mutually exclusive"),
        (Some(count), true) => cfg.grid = Grid::Seeded(count),
        (None, false) => cfg.grid = Grid::Points(points),
        (None, true) => {}
    }
    #[cfg(feature = "tamper")]
    {
        cfg.tamper = g.tamper;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn timestamp(stamp: bool) -> Option<u64> {
    if !stamp {
        return None;
    }
    std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|v| v.parse().ok())
        .or_else(|| {
            SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .ok()
                .map(|d| d.as_secs())
        })
}

fn emit(
    cfg: &RunConfig,
    run: &RunInfo,
    reports: &[CheckReport],
    spectrum: bool,
    sink: &mut dyn Write,
) -> Result<()> {
    match cfg.format {
        Format::Json => output::write_json(sink, run, reports),
        Format::Text => output::write_text(sink, reports),
        Format::Csv if spectrum => {
            let [only] = reports else {
                bail!("CSV spectra need exactly one parameter point");
            };
            let Some(Extra::Complex(values)) = only.extra.get("eigenvalues") else {
                bail!("spectrum report has no eigenvalues");
            };
            output::write_spectrum_csv(sink, values)
        }
        Format::Csv => output::write_csv(sink, reports),
    }
}

fn run(cli: Cli) -> Result<i32> {
    let cfg = build_config(&cli.global).context("configuration")?;
    let mut cfg = cfg;
    let (reports, spectrum) = match cli.command {
        Command::Check {
            suite,
            lengths,
            dim,
        } => {
            if let Some(lengths) = lengths {
                cfg.lengths = lengths;
            }
            if let Some(dim) = dim {
                cfg.dim = dim;
            }
            cfg.validate()?;
            (commands::check(&cfg, suite)?, false)
        }
        Command::Spectrum { length, boundary } => {
            (commands::spectrum(&cfg, length, boundary.into())?, true)
        }
        Command::Compare { length, boundary } => {
            (commands::compare(&cfg, length, boundary.into())?, false)
        }
        Command::Oscillator { dim } => (commands::oscillator(&cfg, dim)?, false),
    };
    let run = RunInfo {
        seed: cfg.seed,
        timestamp: timestamp(cli.global.stamp),
    };
    let mut sink: Box<dyn Write> = match &cli.global.out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    emit(&cfg, &run, &reports, spectrum, &mut sink)?;
    sink.flush()?;
    Ok(if reports.iter().all(|r| r.pass) {
        exit::PASS
    } else {
        exit::FAIL
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit::USAGE as u8)
        }
    }
}
