//! Named verification suites. Each suite runs a family of checks on one
//! group and reports, per check, the number of cases and the largest
//! residual against a pinned tolerance.

mod algebra;
mod coset;

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::group::{GroupModel, IrrepLabel};
use crate::trig::{random_trig_poly, TrigPoly};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Orthogonality,
    TnormCoeff,
    Norms,
    Central,
    ConvTheorem,
    CosetMaps,
    Ideals,
    Derivation,
    Roundtrip,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Orthogonality,
        Suite::TnormCoeff,
        Suite::Norms,
        Suite::Central,
        Suite::ConvTheorem,
        Suite::CosetMaps,
        Suite::Ideals,
        Suite::Derivation,
        Suite::Roundtrip,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Orthogonality => "orthogonality",
            Suite::TnormCoeff => "tnormcoeff",
            Suite::Norms => "norms",
            Suite::Central => "central",
            Suite::ConvTheorem => "conv-theorem",
            Suite::CosetMaps => "coset-maps",
            Suite::Ideals => "ideals",
            Suite::Derivation => "derivation",
            Suite::Roundtrip => "roundtrip",
        }
    }

    /// Parses a suite name; `all` expands to every suite.
    pub fn parse_list(name: &str) -> Result<Vec<Suite>> {
        if name.eq_ignore_ascii_case("all") {
            Ok(Suite::ALL.to_vec())
        } else {
            Ok(vec![name.parse()?])
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown suite '{s}'")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub group: GroupModel,
    pub seed: u64,
    /// Replaces every pinned tolerance when set.
    pub tol: Option<f64>,
    /// Random inputs per check on finite groups; continuous groups use a
    /// tenth of this for the quadrature-backed checks.
    pub samples: usize,
}

impl SuiteConfig {
    pub fn new(group: GroupModel) -> Self {
        SuiteConfig { group, seed: 0, tol: None, samples: 100 }
    }

    fn continuous_samples(&self) -> usize {
        (self.samples / 10).max(1)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub group: String,
    pub seed: u64,
    pub cases: usize,
    pub max_residual: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<serde_json::Value>,
}

/// Running maximum of one check's residuals.
pub(crate) struct Tally {
    name: String,
    tolerance: f64,
    cases: usize,
    max_residual: f64,
}

impl Tally {
    pub(crate) fn new(cfg: &SuiteConfig, name: impl Into<String>, tolerance: f64) -> Self {
        Tally { name: name.into(), tolerance: cfg.tol.unwrap_or(tolerance), cases: 0, max_residual: 0.0 }
    }

    pub(crate) fn record(&mut self, residual: f64) {
        self.cases += 1;
        // NaN propagates as a failure
        if residual.is_nan() || residual > self.max_residual {
            self.max_residual = if residual.is_nan() { f64::INFINITY } else { residual };
        }
    }

    pub(crate) fn finish(self) -> Check {
        let pass = self.max_residual <= self.tolerance;
        let max_residual = if self.max_residual.is_finite() { self.max_residual } else { f64::MAX };
        Check { name: self.name, cases: self.cases, max_residual, tolerance: self.tolerance, pass }
    }
}

pub(crate) struct Outcome {
    checks: Vec<Check>,
    skipped: Option<String>,
    details: Vec<serde_json::Value>,
}

impl Outcome {
    pub(crate) fn checks(tallies: Vec<Tally>) -> Self {
        Outcome { checks: tallies.into_iter().map(Tally::finish).collect(), skipped: None, details: Vec::new() }
    }

    pub(crate) fn skipped(reason: impl Into<String>) -> Self {
        Outcome { checks: Vec::new(), skipped: Some(reason.into()), details: Vec::new() }
    }

    pub(crate) fn with_details(mut self, details: Vec<serde_json::Value>) -> Self {
        self.details = details;
        self
    }
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<SuiteResult> {
    let outcome = match suite {
        Suite::Orthogonality => algebra::orthogonality(cfg)?,
        Suite::TnormCoeff => algebra::tnormcoeff(cfg)?,
        Suite::Norms => algebra::norms(cfg)?,
        Suite::Central => algebra::central(cfg)?,
        Suite::ConvTheorem => algebra::conv_theorem(cfg)?,
        Suite::Roundtrip => algebra::roundtrip(cfg)?,
        Suite::CosetMaps => coset::coset_maps(cfg)?,
        Suite::Ideals => coset::ideals(cfg)?,
        Suite::Derivation => coset::derivation(cfg)?,
    };
    let cases = outcome.checks.iter().map(|c| c.cases).sum();
    let max_residual = outcome.checks.iter().map(|c| c.max_residual).fold(0.0, f64::max);
    Ok(SuiteResult {
        suite: suite.name().to_string(),
        group: cfg.group.name(),
        seed: cfg.seed,
        cases,
        max_residual,
        pass: outcome.checks.iter().all(|c| c.pass),
        skipped: outcome.skipped,
        checks: outcome.checks,
        details: outcome.details,
    })
}

/// Runs a suite name (or `all`) and returns one result per suite.
pub fn run(name: &str, cfg: &SuiteConfig) -> Result<Vec<SuiteResult>> {
    Suite::parse_list(name)?.into_iter().map(|s| run_suite(s, cfg)).collect()
}

pub(crate) fn rng(cfg: &SuiteConfig) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed)
}

pub(crate) fn random_poly(g: &GroupModel, labels: &[IrrepLabel], rng: &mut ChaCha8Rng, central: bool) -> Result<TrigPoly> {
    random_trig_poly(g, labels, rng.gen(), central)
}

/// Labels whose pairwise products stay inside the cutoff.
pub(crate) fn low_labels(g: &GroupModel) -> Vec<IrrepLabel> {
    let max = g.max_degree();
    g.enumerate_irreps().into_iter().filter(|l| 2 * g.label_degree(l) <= max).collect()
}

/// Product models split into their factors; irreps of a product are
/// Kronecker products, so per-factor integrals cover them.
pub(crate) fn factor_groups(g: &GroupModel) -> Vec<GroupModel> {
    match g.factors() {
        Some((a, b)) => {
            let mut out = factor_groups(a);
            out.extend(factor_groups(b));
            out
        }
        None => vec![g.clone()],
    }
}

/// `|a - b| / max(1, |b|)`.
pub(crate) fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}
