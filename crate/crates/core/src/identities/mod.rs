//! Registry of q-series identities and the harness that checks them.
//!
//! Each identity evaluates its left and right sides by independent routes
//! (series against product, quadrature against closed form, Jackson sum
//! against series). A draw that exercises several sub-cases, such as every
//! order n of a terminating identity, is reported by its worst component.

mod checks;
mod orthogonality;
pub mod params;
mod registry;

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::Serialize;

use crate::error::{QError, Result};
use crate::qcore::{ComplexScalar, TruncationPolicy};
use crate::qintegrals::QuadraturePolicy;

pub use orthogonality::{
    big_qjacobi_gram, check_orthogonality_big_qjacobi, check_orthogonality_qhahn, qhahn_gram, Gram,
};
pub use params::{fnv1a, Params, Sampler};
pub use registry::{lookup, registry};

type C = ComplexScalar;

/// Complex number in report form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cx {
    pub re: f64,
    pub im: f64,
}

impl From<C> for Cx {
    fn from(z: C) -> Self {
        Cx { re: z.re, im: z.im }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

/// One compared pair. `scale` replaces max(|lhs|,|rhs|) from below when the
/// exact value vanishes (terminating sums equal to 0, off-diagonal Gram entries).
#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    pub label: String,
    pub lhs: C,
    pub rhs: C,
    pub scale: Option<f64>,
}

impl Component {
    pub fn new(label: impl Into<String>, lhs: C, rhs: C) -> Self {
        Component { label: label.into(), lhs, rhs, scale: None }
    }

    pub fn scaled(label: impl Into<String>, lhs: C, rhs: C, scale: f64) -> Self {
        Component { label: label.into(), lhs, rhs, scale: Some(scale) }
    }

    pub fn abs_err(&self) -> f64 {
        (self.lhs - self.rhs).norm()
    }

    pub fn rel_err(&self) -> f64 {
        let den = self.lhs.norm().max(self.rhs.norm()).max(self.scale.unwrap_or(0.0)).max(1e-300);
        let e = self.abs_err() / den;
        if e.is_nan() {
            f64::INFINITY
        } else {
            e
        }
    }
}

/// Result of evaluating one identity at one parameter point.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Outcome {
    pub components: Vec<Component>,
    pub terms: usize,
    pub nodes: usize,
}

impl Outcome {
    pub fn single(lhs: C, rhs: C) -> Self {
        Outcome { components: vec![Component::new("", lhs, rhs)], terms: 0, nodes: 0 }
    }

    pub fn push(&mut self, c: Component) {
        self.components.push(c);
    }

    pub fn terms(mut self, t: usize) -> Self {
        self.terms = self.terms.max(t);
        self
    }

    pub fn nodes(mut self, n: usize) -> Self {
        self.nodes = self.nodes.max(n);
        self
    }

    /// The component with the largest relative error (first on ties).
    pub fn worst(&self) -> Option<&Component> {
        let mut best: Option<&Component> = None;
        for c in &self.components {
            if best.map_or(true, |b| c.rel_err() > b.rel_err()) {
                best = Some(c);
            }
        }
        best
    }
}

/// Numerical settings shared by every check.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Config {
    pub truncation: TruncationPolicy,
    pub quadrature: QuadraturePolicy,
    /// Replaces every registry threshold.
    pub tolerance: Option<f64>,
    /// Per-identity thresholds, applied after `tolerance`.
    pub overrides: BTreeMap<String, f64>,
}

impl Config {
    pub fn threshold(&self, def: &IdentityDef) -> f64 {
        self.overrides.get(def.id).copied().or(self.tolerance).unwrap_or(def.threshold)
    }
}

pub type DomainCheck = fn(&Params) -> std::result::Result<(), String>;
pub type Evaluator = fn(&Params, &Config) -> Result<Outcome>;

/// A registered identity.
#[derive(Clone)]
pub struct IdentityDef {
    pub id: &'static str,
    pub title: &'static str,
    /// Required parameter names, in report order.
    pub params: &'static [&'static str],
    /// Parameters that may be given but have no default.
    pub optional: &'static [&'static str],
    pub threshold: f64,
    pub note: &'static str,
    pub(crate) pinned: fn() -> Vec<Params>,
    pub(crate) sample: fn(&mut Sampler) -> Params,
    pub(crate) domain: DomainCheck,
    pub(crate) eval: Evaluator,
}

impl std::fmt::Debug for IdentityDef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdentityDef").field("id", &self.id).field("params", &self.params).finish()
    }
}

impl IdentityDef {
    /// Fixed parameter points, run after the random draws.
    pub fn pinned_points(&self) -> Vec<Params> {
        (self.pinned)()
    }

    /// Parameters for suite slot `k`: the first `draws` slots are random
    /// draws, the rest are the pinned points.
    pub fn draw(&self, seed: u64, draws: usize, k: usize) -> (Params, bool) {
        if k < draws {
            return (self.sample_params(seed, k as u64), false);
        }
        (self.pinned_points()[k - draws].clone(), true)
    }

    /// A random point in the identity's sampling domain.
    pub fn sample_params(&self, seed: u64, draw: u64) -> Params {
        let mut s = Sampler::new(self.id, seed, draw);
        for _ in 0..10_000 {
            let p = (self.sample)(&mut s);
            if (self.domain)(&p).is_ok() {
                return p;
            }
        }
        // The samplers are built to land in the domain; reaching this means the
        // domain is nearly empty, and the report will say so.
        (self.sample)(&mut s)
    }

    /// Fill missing parameters from the first pinned point and reject unknown names.
    pub fn complete(&self, given: &Params) -> Result<Params> {
        for (k, _) in given.iter() {
            if !self.params.contains(&k) && !self.optional.contains(&k) {
                return Err(QError::InvalidArgument(format!(
                    "unknown parameter `{k}` for {} (expected {})",
                    self.id,
                    self.params.join(", ")
                )));
            }
        }
        let defaults = self.pinned_points().into_iter().next().unwrap_or_default();
        let mut out = Params::new();
        for &name in self.params {
            let v = given
                .lookup(name)
                .or_else(|| defaults.lookup(name))
                .ok_or_else(|| QError::InvalidArgument(format!("missing parameter `{name}` for {}", self.id)))?;
            out.set(name, v);
        }
        for &name in self.optional {
            if let Some(v) = given.lookup(name) {
                out.set(name, v);
            }
        }
        Ok(out)
    }

    /// Domain check.
    pub fn admits(&self, params: &Params) -> std::result::Result<(), String> {
        (self.domain)(params)
    }

    /// Every component at a complete parameter set, without thresholds.
    pub fn evaluate(&self, params: &Params, cfg: &Config) -> Result<Outcome> {
        (self.domain)(params).map_err(QError::Domain)?;
        (self.eval)(params, cfg)
    }

    /// Evaluate at a complete parameter set. Never fails: errors become a
    /// `fail` (numerical breakdown) or `skipped` (outside the domain) report.
    pub fn run(&self, params: Params, cfg: &Config, draw: usize, pinned: bool) -> IdentityReport {
        let threshold = cfg.threshold(self);
        let mut report = IdentityReport {
            id: self.id.to_string(),
            draw,
            pinned,
            params,
            lhs: None,
            rhs: None,
            abs_err: None,
            rel_err: None,
            threshold,
            status: Status::Skipped,
            reason: None,
            diagnostics: Diagnostics::default(),
        };
        if let Err(why) = (self.domain)(&report.params) {
            report.reason = Some(why);
            return report;
        }
        match (self.eval)(&report.params, cfg) {
            Ok(out) => {
                report.diagnostics.terms = out.terms;
                report.diagnostics.nodes = out.nodes;
                report.diagnostics.components = out.components.len();
                match out.worst() {
                    Some(w) => {
                        let rel = w.rel_err();
                        report.lhs = Some(w.lhs.into());
                        report.rhs = Some(w.rhs.into());
                        report.abs_err = Some(w.abs_err());
                        report.rel_err = Some(rel);
                        report.diagnostics.worst = (!w.label.is_empty()).then(|| w.label.clone());
                        report.diagnostics.scale = w.scale;
                        report.status = if rel <= threshold { Status::Pass } else { Status::Fail };
                    }
                    None => report.reason = Some("nothing to compare".into()),
                }
            }
            Err(QError::Domain(why)) => report.reason = Some(why),
            Err(e @ QError::PoleInDenominator { .. }) => report.reason = Some(e.to_string()),
            Err(e) => {
                report.status = Status::Fail;
                report.reason = Some(e.to_string());
            }
        }
        report
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct Diagnostics {
    /// Series terms used (largest over components).
    pub terms: usize,
    /// Quadrature nodes or Jackson-sum points used.
    pub nodes: usize,
    pub components: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scale: Option<f64>,
}

/// Outcome of one (identity, draw).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub id: String,
    pub draw: usize,
    pub pinned: bool,
    pub params: Params,
    pub lhs: Option<Cx>,
    pub rhs: Option<Cx>,
    pub abs_err: Option<f64>,
    pub rel_err: Option<f64>,
    pub threshold: f64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub diagnostics: Diagnostics,
}

/// Check one identity at the given (possibly partial) parameters.
pub fn check_identity(id: &str, params: &Params, cfg: &Config) -> Result<IdentityReport> {
    let def = lookup(id).ok_or_else(|| QError::UnknownIdentity(id.to_string()))?;
    let full = def.complete(params)?;
    Ok(def.run(full, cfg, 0, false))
}

/// Random parameters for an identity, reproducible from (seed, draw).
pub fn sample_params(id: &str, seed: u64, draw: u64) -> Result<Params> {
    let def = lookup(id).ok_or_else(|| QError::UnknownIdentity(id.to_string()))?;
    Ok(def.sample_params(seed, draw))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOptions {
    /// Identities to run; empty means the whole registry.
    pub ids: Vec<String>,
    pub draws: usize,
    pub seed: u64,
    pub jobs: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { ids: Vec::new(), draws: 5, seed: 0, jobs: 1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub draws: usize,
    pub summary: Summary,
    pub reports: Vec<IdentityReport>,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &IdentityReport> {
        self.reports.iter().filter(|r| r.status == Status::Fail)
    }
}

/// Run `draws` random checks of every selected identity plus its pinned
/// points. The report order is the registry order and then the draw index,
/// whatever `jobs` is.
pub fn run_suite(opts: &SuiteOptions, cfg: &Config) -> Result<SuiteReport> {
    let defs: Vec<&IdentityDef> = if opts.ids.is_empty() {
        registry().iter().collect()
    } else {
        opts.ids
            .iter()
            .map(|id| lookup(id).ok_or_else(|| QError::UnknownIdentity(id.clone())))
            .collect::<Result<_>>()?
    };
    let tasks: Vec<(&IdentityDef, usize)> =
        defs.iter().flat_map(|&d| (0..opts.draws + d.pinned_points().len()).map(move |k| (d, k))).collect();
    let mut slots: Vec<Option<IdentityReport>> = vec![None; tasks.len()];
    let jobs = opts.jobs.max(1).min(tasks.len().max(1));
    let next = AtomicUsize::new(0);
    let results = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|_| {
                scope.spawn(|| {
                    let mut done = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        let Some(&(def, k)) = tasks.get(i) else { break };
                        let (params, pinned) = def.draw(opts.seed, opts.draws, k);
                        done.push((i, def.run(params, cfg, k, pinned)));
                    }
                    done
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("suite worker panicked")).collect::<Vec<_>>()
    });
    for (i, r) in results {
        slots[i] = Some(r);
    }
    let reports: Vec<IdentityReport> = slots.into_iter().map(|r| r.expect("every task ran")).collect();
    let mut summary = Summary { total: reports.len(), ..Summary::default() };
    for r in &reports {
        match r.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::Skipped => summary.skipped += 1,
        }
    }
    Ok(SuiteReport { seed: opts.seed, draws: opts.draws, summary, reports })
}
