//! The `qkernel` command line: list, check, suite and eval.
//!
//! Exit status: 0 when nothing failed, 1 when some identity failed, 2 on an
//! argument error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{QError, Result};
use crate::hyperseries::{eval_phi, SeriesSpec};
use crate::identities::{check_identity, lookup, registry, run_suite, Config, Cx, Params, SuiteOptions};
use crate::polyfamilies::{
    askey_wilson_polys, big_qjacobi_polys, qhahn_polys, AWParams, BigQJacobiParams, QHahnParams,
};
use crate::qcalculus::{q_integral_detailed, AnalyticFn, PochRatio, Polynomial};
use crate::qcore::{parse_complex, poch_finite, poch_infinite, Base, ComplexScalar, TruncationPolicy};
use crate::report::{write_check, write_suite, Format, Header};

type C = ComplexScalar;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "qkernel", version, about = "Evaluate q-series and check q-series identities numerically")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the registered identities.
    List {
        #[arg(long, default_value_t = Format::Human)]
        format: Format,
    },
    /// Check one identity. Parameters are given as `--name value` or
    /// `name=value`; missing ones take the identity's first pinned point.
    /// Also accepts --format, --output and --tol.
    Check {
        id: String,
        #[arg(trailing_var_arg = true, allow_hyphen_values = true, value_name = "PARAMS")]
        args: Vec<String>,
    },
    /// Run many random draws of every selected identity.
    Suite(SuiteArgs),
    /// Evaluate a primitive: poch, phi, qint or poly.
    Eval {
        primitive: Primitive,
        #[arg(trailing_var_arg = true, allow_hyphen_values = true, value_name = "ARGS")]
        args: Vec<String>,
    },
}

#[derive(Debug, clap::Args)]
struct SuiteArgs {
    /// Identities to run (all of them with --all).
    ids: Vec<String>,
    #[arg(long)]
    all: bool,
    #[arg(long, default_value_t = 5)]
    draws: usize,
    /// Falls back to $QKERNEL_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = Format::Human)]
    format: Format,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Leave the timestamp out of the report.
    #[arg(long)]
    deterministic: bool,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// One threshold for every identity.
    #[arg(long)]
    tol: Option<f64>,
    /// Per-identity threshold, repeatable.
    #[arg(long = "threshold", value_name = "ID=TOL")]
    thresholds: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Primitive {
    Poch,
    Phi,
    Qint,
    Poly,
}

/// Run the command line on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::List { format } => list(out, format),
        Command::Check { id, args } => check(out, &id, &args),
        Command::Suite(s) => suite(out, &s),
        Command::Eval { primitive, args } => eval(out, primitive, &args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "qkernel: {e}");
            match e {
                QError::InvalidArgument(_) | QError::UnknownIdentity(_) => EXIT_USAGE,
                _ => EXIT_FAIL,
            }
        }
    }
}

fn bad(msg: impl Into<String>) -> QError {
    QError::InvalidArgument(msg.into())
}

fn list(out: &mut dyn Write, format: Format) -> Result<i32> {
    #[derive(Serialize)]
    struct Entry<'a> {
        id: &'a str,
        title: &'a str,
        params: &'a [&'a str],
        threshold: f64,
        #[serde(skip_serializing_if = "str::is_empty")]
        note: &'a str,
    }
    let entries: Vec<Entry> = registry()
        .iter()
        .map(|d| Entry { id: d.id, title: d.title, params: d.params, threshold: d.threshold, note: d.note })
        .collect();
    let w = |e: io::Error| bad(format!("write failed: {e}"));
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &entries).map_err(|e| bad(e.to_string()))?;
            writeln!(out).map_err(w)?;
        }
        Format::Csv => {
            writeln!(out, "id,threshold,params").map_err(w)?;
            for e in &entries {
                writeln!(out, "{},{:e},{}", e.id, e.threshold, e.params.join(" ")).map_err(w)?;
            }
        }
        Format::Human => {
            for e in &entries {
                writeln!(out, "{:<28} {}", e.id, e.title).map_err(w)?;
                if !e.note.is_empty() {
                    writeln!(out, "{:<28} ({})", "", e.note).map_err(w)?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}

/// `--name value`, `--name=value` and `name=value`, in order, duplicates rejected.
fn named_args(args: &[String]) -> Result<Vec<(String, String)>> {
    let mut out: Vec<(String, String)> = Vec::new();
    let mut it = args.iter();
    while let Some(tok) = it.next() {
        let tok = if tok == "-o" { "--output" } else { tok.as_str() };
        let (name, value) = if let Some(flag) = tok.strip_prefix("--") {
            match flag.split_once('=') {
                Some((k, v)) => (k.to_string(), v.to_string()),
                None if flag == "deterministic" => (flag.to_string(), "true".to_string()),
                None => {
                    let v = it.next().ok_or_else(|| bad(format!("`--{flag}` needs a value")))?;
                    (flag.to_string(), v.clone())
                }
            }
        } else if let Some((k, v)) = tok.split_once('=') {
            (k.to_string(), v.to_string())
        } else {
            return Err(bad(format!("unexpected argument `{tok}` (use name=value or --name value)")));
        };
        if name.is_empty() {
            return Err(bad(format!("empty parameter name in `{tok}`")));
        }
        if out.iter().any(|(k, _)| *k == name) {
            return Err(bad(format!("parameter `{name}` given twice")));
        }
        out.push((name, value));
    }
    Ok(out)
}

fn parse_f64(name: &str, text: &str) -> Result<f64> {
    text.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| bad(format!("`{name}` must be a finite number, got `{text}`")))
}

/// Options shared by `check` and `eval`, split off from the parameters.
struct Common {
    format: Format,
    output: Option<PathBuf>,
    tol: Option<f64>,
}

fn split_common(pairs: Vec<(String, String)>) -> Result<(Common, Vec<(String, String)>)> {
    let mut common = Common { format: Format::Human, output: None, tol: None };
    let mut rest = Vec::new();
    for (k, v) in pairs {
        match k.as_str() {
            "format" => common.format = v.parse()?,
            "output" => common.output = Some(PathBuf::from(v)),
            "tol" => common.tol = Some(parse_f64("tol", &v)?),
            "deterministic" => {}
            _ => rest.push((k, v)),
        }
    }
    Ok((common, rest))
}

fn with_output(
    path: &Option<PathBuf>,
    out: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> Result<()>,
) -> Result<()> {
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| bad(format!("cannot create {}: {e}", p.display())))?;
            let mut w = BufWriter::new(file);
            body(&mut w)?;
            w.flush().map_err(|e| bad(format!("cannot write {}: {e}", p.display())))
        }
        None => body(out),
    }
}

fn check(out: &mut dyn Write, id: &str, args: &[String]) -> Result<i32> {
    let def = lookup(id).ok_or_else(|| QError::UnknownIdentity(id.to_string()))?;
    let (common, pairs) = split_common(named_args(args)?)?;
    let mut given = Params::new();
    for (k, v) in &pairs {
        given.set(k, parse_complex(v)?);
    }
    def.complete(&given)?;
    let cfg = Config { tolerance: common.tol, ..Config::default() };
    let report = check_identity(id, &given, &cfg)?;
    with_output(&common.output, out, |w| write_check(w, common.format, &report))?;
    Ok(if report.status == crate::identities::Status::Fail { EXIT_FAIL } else { EXIT_OK })
}

fn resolve_seed(flag: Option<u64>) -> Result<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("QKERNEL_SEED") {
        Ok(text) => text.trim().parse().map_err(|_| bad(format!("QKERNEL_SEED must be an integer, got `{text}`"))),
        Err(_) => Ok(0),
    }
}

fn suite(out: &mut dyn Write, s: &SuiteArgs) -> Result<i32> {
    if s.all == !s.ids.is_empty() {
        return Err(bad("give either --all or a list of identity ids"));
    }
    if s.jobs == 0 {
        return Err(bad("--jobs must be at least 1"));
    }
    if let Some(t) = s.tol {
        if !(t.is_finite() && t > 0.0) {
            return Err(bad("--tol must be positive"));
        }
    }
    let mut overrides = BTreeMap::new();
    for spec in &s.thresholds {
        let (id, t) = spec.split_once('=').ok_or_else(|| bad(format!("--threshold expects ID=TOL, got `{spec}`")))?;
        lookup(id).ok_or_else(|| QError::UnknownIdentity(id.to_string()))?;
        overrides.insert(id.to_string(), parse_f64("threshold", t)?);
    }
    let seed = resolve_seed(s.seed)?;
    let cfg = Config { tolerance: s.tol, overrides, ..Config::default() };
    let opts = SuiteOptions { ids: s.ids.clone(), draws: s.draws, seed, jobs: s.jobs };
    let report = run_suite(&opts, &cfg)?;
    let header = Header::new(seed, s.draws, &cfg, s.deterministic);
    with_output(&s.output, out, |w| write_suite(w, s.format, &header, &report))?;
    Ok(if report.summary.fail > 0 { EXIT_FAIL } else { EXIT_OK })
}

// ------------------------------------------------------------------ eval

struct Args(Vec<(String, String)>, Vec<&'static str>);

impl Args {
    fn take(&mut self, name: &'static str) -> Option<String> {
        self.1.push(name);
        let i = self.0.iter().position(|(k, _)| k == name)?;
        Some(self.0.remove(i).1)
    }

    fn scalar(&mut self, name: &'static str) -> Result<C> {
        let text = self.take(name).ok_or_else(|| bad(format!("missing `{name}`")))?;
        parse_complex(&text)
    }

    fn list(&mut self, name: &'static str) -> Result<Vec<C>> {
        match self.take(name) {
            None => Ok(Vec::new()),
            Some(t) if t.trim().is_empty() => Ok(Vec::new()),
            Some(t) => t.split(',').map(parse_complex).collect(),
        }
    }

    fn index(&mut self, name: &'static str) -> Result<Option<usize>> {
        self.take(name)
            .map(|t| t.parse::<usize>().map_err(|_| bad(format!("`{name}` must be a nonnegative integer, got `{t}`"))))
            .transpose()
    }

    fn finish(self) -> Result<()> {
        match self.0.first() {
            None => Ok(()),
            Some((k, _)) => Err(bad(format!("unknown argument `{k}` (expected {})", self.1.join(", ")))),
        }
    }
}

#[derive(Serialize)]
struct EvalOutput {
    primitive: &'static str,
    value: Cx,
    #[serde(skip_serializing_if = "Option::is_none")]
    terms: Option<usize>,
}

fn eval(out: &mut dyn Write, primitive: Primitive, args: &[String]) -> Result<i32> {
    let (common, pairs) = split_common(named_args(args)?)?;
    let mut a = Args(pairs, Vec::new());
    let tp = TruncationPolicy::default();
    let (name, value, terms) = match primitive {
        Primitive::Poch => {
            let (x, q, n) = (a.scalar("a")?, Base::new(a.scalar("q")?)?, a.index("n")?);
            a.finish()?;
            match n {
                Some(n) => ("poch", poch_finite(x, &q, n), None),
                None => ("poch", poch_infinite(x, &q, &tp)?, None),
            }
        }
        Primitive::Phi => {
            let (num, den) = (a.list("num")?, a.list("den")?);
            let (q, z, n) = (Base::new(a.scalar("q")?)?, a.scalar("z")?, a.index("n")?);
            a.finish()?;
            let mut spec = SeriesSpec::new(num, den, q, z);
            if let Some(n) = n {
                spec = spec.terminating(n);
            }
            let r = eval_phi(&spec, &tp)?;
            ("phi", r.value, Some(r.terms_used))
        }
        Primitive::Qint => {
            let (lo, hi, q) = (a.scalar("lower")?, a.scalar("upper")?, Base::new(a.scalar("q")?)?);
            let coeffs = a.list("coeffs")?;
            let (num, den) = (a.list("num")?, a.list("den")?);
            a.finish()?;
            let f: Box<dyn AnalyticFn> = if coeffs.is_empty() {
                Box::new(PochRatio::new(num, den, q))
            } else if num.is_empty() && den.is_empty() {
                Box::new(Polynomial::new(coeffs))
            } else {
                return Err(bad("give either --coeffs or --num/--den, not both"));
            };
            let r = q_integral_detailed(f.as_ref(), lo, hi, &q, &tp)?;
            ("qint", r.value, Some(r.terms_used))
        }
        Primitive::Poly => {
            let family = a.take("family").ok_or_else(|| bad("missing `family` (qhahn, bigqjacobi, askey-wilson)"))?;
            let n = a.index("n")?.ok_or_else(|| bad("missing `n`"))?;
            let value = match family.as_str() {
                "qhahn" => {
                    let (pa, pb, pc, pd) = (a.scalar("a")?, a.scalar("b")?, a.scalar("c")?, a.scalar("d")?);
                    let (q, z) = (Base::new(a.scalar("q")?)?, a.scalar("z")?);
                    a.finish()?;
                    qhahn_polys(n, &QHahnParams::new(pa, pb, pc, pd, C::new(1.0, 0.0), q), z)?[n]
                }
                "bigqjacobi" => {
                    let (pa, pb, pc) = (a.scalar("a")?, a.scalar("b")?, a.scalar("c")?);
                    let (q, x) = (Base::new(a.scalar("q")?)?, a.scalar("x")?);
                    a.finish()?;
                    big_qjacobi_polys(n, &BigQJacobiParams::new(pa, pb, pc, q), x)?[n]
                }
                "askey-wilson" | "aw" => {
                    let (pa, pb, pc, pd) = (a.scalar("a")?, a.scalar("b")?, a.scalar("c")?, a.scalar("d")?);
                    let q = Base::new(a.scalar("q")?)?;
                    let theta = a.scalar("theta")?;
                    a.finish()?;
                    if theta.im != 0.0 {
                        return Err(bad("`theta` must be real"));
                    }
                    askey_wilson_polys(n, &AWParams::new(pa, pb, pc, pd, q), theta.re)?[n]
                }
                other => return Err(bad(format!("unknown family `{other}` (qhahn, bigqjacobi, askey-wilson)"))),
            };
            ("poly", value, None)
        }
    };
    let result = EvalOutput { primitive: name, value: value.into(), terms };
    with_output(&common.output, out, |w| {
        let e = |e: io::Error| bad(format!("write failed: {e}"));
        match common.format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *w, &result).map_err(|e| bad(e.to_string()))?;
                writeln!(w).map_err(e)
            }
            Format::Csv => writeln!(w, "primitive,re,im\n{},{:e},{:e}", name, value.re, value.im).map_err(e),
            Format::Human => writeln!(w, "{}", crate::qcore::format_complex(value)).map_err(e),
        }
    })?;
    Ok(EXIT_OK)
}
