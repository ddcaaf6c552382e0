//! Report serialization.
//!
//! JSON: `{"schema": 1, "run": {"seed", "timestamp"}, "reports": [...]}` with
//! every float written with 17 significant digits, so identical runs give
//! identical bytes.
//!
//! CSV reports: `check_name,parameters,residual,tolerance,pass`, parameters as
//! `key=value` pairs joined by `;`. CSV spectra: `re,im`, one eigenvalue per row.

use std::io::{self, Write};

use anyhow::Result;
use cgtwist_core::{CheckReport, Extra};
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct RunInfo {
    pub seed: u64,
    /// Unix seconds; `null` unless stamping was requested, since a wall-clock
    /// value would make repeated runs differ.
    pub timestamp: Option<u64>,
}

#[derive(Debug, Serialize)]
struct Document<'a> {
    schema: u32,
    run: &'a RunInfo,
    reports: &'a [CheckReport],
}

/// Pretty JSON with `{:.16e}` floats.
struct FixedDigits(PrettyFormatter<'static>);

impl Formatter for FixedDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn write_json<W: Write>(mut w: W, run: &RunInfo, reports: &[CheckReport]) -> Result<()> {
    let doc = Document {
        schema: SCHEMA_VERSION,
        run,
        reports,
    };
    let mut ser =
        serde_json::Serializer::with_formatter(&mut w, FixedDigits(PrettyFormatter::new()));
    doc.serialize(&mut ser)?;
    writeln!(w)?;
    Ok(())
}

fn fmt_params(r: &CheckReport) -> String {
    r.parameters
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

pub fn write_csv<W: Write>(w: W, reports: &[CheckReport]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["check_name", "parameters", "residual", "tolerance", "pass"])?;
    for r in reports {
        out.write_record([
            r.check_name.clone(),
            fmt_params(r),
            format!("{:.16e}", r.residual),
            format!("{:.16e}", r.tolerance),
            r.pass.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// `re,im` rows; `values` are `[re, im]` pairs, already sorted.
pub fn write_spectrum_csv<W: Write>(w: W, values: &[[f64; 2]]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["re", "im"])?;
    for [re, im] in values {
        out.write_record([format!("{re:.16e}"), format!("{im:.16e}")])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_text<W: Write>(mut w: W, reports: &[CheckReport]) -> Result<()> {
    for r in reports {
        let verdict = if r.pass { "PASS" } else { "FAIL" };
        write!(
            w,
            "{verdict}  {:<28} {:<40} residual={:.3e} tol={:.1e}",
            r.check_name,
            fmt_params(r),
            r.residual,
            r.tolerance
        )?;
        for key in ["case", "error", "asserted"] {
            match r.extra.get(key) {
                Some(Extra::Text(t)) => write!(w, " {key}={t}")?,
                Some(Extra::Flag(b)) => write!(w, " {key}={b}")?,
                _ => {}
            }
        }
        writeln!(w)?;
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    writeln!(
        w,
        "{} checks, {} passed, {} failed",
        reports.len(),
        reports.len() - failed,
        failed
    )?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Vec<CheckReport> {
        vec![CheckReport::residual("yang_baxter", 1.0 / 3.0, 1e-11)
            .with_param("q", 1.3)
            .with_extra("eigenvalues", Extra::Complex(vec![[0.1, -0.0]]))]
    }

    #[test]
    fn json_has_schema_and_17_digits() {
        let mut buf = Vec::new();
        write_json(
            &mut buf,
            &RunInfo {
                seed: 5,
                timestamp: None,
            },
            &sample(),
        )
        .unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("\"schema\": 1"));
        assert!(text.contains("\"timestamp\": null"));
        assert!(text.contains("3.3333333333333331e-1"));
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed["reports"][0]["residual"].as_f64(), Some(1.0 / 3.0));
        assert_eq!(parsed["run"]["seed"], 5);
    }

    #[test]
    fn non_finite_residual_is_null() {
        let reports = vec![CheckReport::residual("x", f64::NAN, 1.0)];
        let mut buf = Vec::new();
        write_json(
            &mut buf,
            &RunInfo {
                seed: 0,
                timestamp: None,
            },
            &reports,
        )
        .unwrap();
        let parsed: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert!(parsed["reports"][0]["residual"].is_null());
    }

    #[test]
    fn spectrum_csv() {
        let mut buf = Vec::new();
        write_spectrum_csv(&mut buf, &[[-1.0, 0.0], [1.0, 0.0]]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "re,im");
        assert_eq!(lines.len(), 3);
    }

    #[test]
    fn text_summary() {
        let mut buf = Vec::new();
        write_text(&mut buf, &sample()).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("FAIL"));
        assert!(text.ends_with("1 checks, 0 passed, 1 failed\n"));
    }
}
