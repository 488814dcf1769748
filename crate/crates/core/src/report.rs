//! Serialized suite and check reports: json, csv and a plain-text table.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::error::{QError, Result};
use crate::identities::{Config, IdentityReport, SuiteReport, Summary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Human,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = QError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "human" => Ok(Format::Human),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(QError::InvalidArgument(format!("unknown format `{other}` (human, json, csv)"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Human => "human",
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

/// Run settings echoed at the top of a suite report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Header {
    pub tool: &'static str,
    pub version: &'static str,
    pub seed: u64,
    pub draws: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub thresholds: BTreeMap<String, f64>,
    /// Seconds since the Unix epoch; absent in deterministic mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<u64>,
}

impl Header {
    pub fn new(seed: u64, draws: usize, cfg: &Config, deterministic: bool) -> Self {
        let generated_at =
            if deterministic { None } else { SystemTime::now().duration_since(UNIX_EPOCH).ok().map(|d| d.as_secs()) };
        Header {
            tool: "qkernel",
            version: env!("CARGO_PKG_VERSION"),
            seed,
            draws,
            tolerance: cfg.tolerance,
            thresholds: cfg.overrides.clone(),
            generated_at,
        }
    }
}

#[derive(Serialize)]
struct SuiteDocument<'a> {
    #[serde(flatten)]
    header: &'a Header,
    summary: Summary,
    reports: &'a [IdentityReport],
}

fn io(e: std::io::Error) -> QError {
    QError::InvalidArgument(format!("write failed: {e}"))
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(String::new, |v| format!("{v:e}"))
}

pub fn write_suite(out: &mut dyn Write, format: Format, header: &Header, suite: &SuiteReport) -> Result<()> {
    match format {
        Format::Json => {
            let doc = SuiteDocument { header, summary: suite.summary, reports: &suite.reports };
            serde_json::to_writer_pretty(&mut *out, &doc).map_err(|e| QError::InvalidArgument(e.to_string()))?;
            writeln!(out).map_err(io)
        }
        Format::Csv => write_csv(out, &suite.reports),
        Format::Human => {
            writeln!(out, "qkernel suite  seed={}  draws={}", header.seed, header.draws).map_err(io)?;
            if let Some(t) = header.tolerance {
                writeln!(out, "tolerance override {t:e}").map_err(io)?;
            }
            for (id, t) in &header.thresholds {
                writeln!(out, "threshold {id} = {t:e}").map_err(io)?;
            }
            for r in &suite.reports {
                writeln!(out, "{}", human_line(r)).map_err(io)?;
            }
            let s = suite.summary;
            writeln!(out, "total {}  pass {}  fail {}  skipped {}", s.total, s.pass, s.fail, s.skipped).map_err(io)
        }
    }
}

pub fn write_check(out: &mut dyn Write, format: Format, report: &IdentityReport) -> Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, report).map_err(|e| QError::InvalidArgument(e.to_string()))?;
            writeln!(out).map_err(io)
        }
        Format::Csv => write_csv(out, std::slice::from_ref(report)),
        Format::Human => {
            writeln!(out, "{}", human_line(report)).map_err(io)?;
            writeln!(out, "  params {}", report.params).map_err(io)?;
            if let (Some(l), Some(r)) = (report.lhs, report.rhs) {
                writeln!(out, "  lhs {}{:+}i", l.re, l.im).map_err(io)?;
                writeln!(out, "  rhs {}{:+}i", r.re, r.im).map_err(io)?;
            }
            let d = &report.diagnostics;
            writeln!(out, "  terms {}  nodes {}  components {}", d.terms, d.nodes, d.components).map_err(io)
        }
    }
}

fn write_csv(out: &mut dyn Write, reports: &[IdentityReport]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let err = |e: csv::Error| QError::InvalidArgument(format!("csv: {e}"));
    w.write_record(["id", "draw", "rel_err", "abs_err", "status"]).map_err(err)?;
    for r in reports {
        w.write_record([r.id.clone(), r.draw.to_string(), opt(r.rel_err), opt(r.abs_err), r.status.as_str().into()])
            .map_err(err)?;
    }
    w.flush().map_err(io)
}

fn human_line(r: &IdentityReport) -> String {
    let rel = r.rel_err.map_or_else(|| "-".to_string(), |v| format!("{v:.2e}"));
    let mut line = format!(
        "{:<28} {:>3}{} {:<7} rel={:<9} thr={:.0e}",
        r.id,
        r.draw,
        if r.pinned { "*" } else { " " },
        r.status.as_str(),
        rel,
        r.threshold
    );
    if let Some(w) = &r.diagnostics.worst {
        line.push_str(&format!(" [{w}]"));
    }
    if let Some(reason) = &r.reason {
        line.push_str(&format!(" {reason}"));
    }
    line
}
