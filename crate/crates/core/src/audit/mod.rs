//! Claim auditor: runs every registered check and renders a deterministic
//! report.

mod checks;
mod registry;

use std::fmt::{self, Write as _};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::algebra::{Element, GaussRational};
use crate::error::{Error, Result};

pub use registry::{claim_specs, in_scope_anchors, ClaimSpec};

pub const MAX_WINDOW: u32 = 8;
pub const MAX_N: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Deserialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "AMENDED")]
    Amended,
    #[serde(rename = "VACUOUS")]
    Vacuous,
    #[serde(rename = "OUT-OF-SCOPE")]
    OutOfScope,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Amended => "AMENDED",
            Status::Vacuous => "VACUOUS",
            Status::OutOfScope => "OUT-OF-SCOPE",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Status {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClaimReport {
    pub id: String,
    pub anchor: String,
    pub quote: String,
    pub status: Status,
    pub witness: Value,
    pub notes: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditConfig {
    pub window: u32,
    pub eps: GaussRational,
    pub n: usize,
    pub seed: u64,
    pub claims: Option<Vec<String>>,
}

impl Default for AuditConfig {
    fn default() -> Self {
        Self { window: 5, eps: GaussRational::ratio(3, 10), n: 64, seed: 0, claims: None }
    }
}

impl AuditConfig {
    pub fn validate(&self) -> Result<()> {
        if self.window == 0 || self.window > MAX_WINDOW {
            return Err(Error::Invalid(format!("window must satisfy 1 <= window <= {MAX_WINDOW}, got {}", self.window)));
        }
        if self.n < 16 || self.n > MAX_N {
            return Err(Error::Invalid(format!("N must satisfy 16 <= N <= {MAX_N}, got {}", self.n)));
        }
        if let Some(ids) = &self.claims {
            let known: Vec<&str> = claim_specs().iter().map(|c| c.id.as_str()).collect();
            if let Some(bad) = ids.iter().find(|id| !known.contains(&id.as_str())) {
                return Err(Error::Invalid(format!("unknown claim id `{bad}`")));
            }
        }
        Ok(())
    }
}

impl Serialize for AuditConfig {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct View<'a> {
            window: u32,
            eps: String,
            n: usize,
            seed: u64,
            claims: &'a Option<Vec<String>>,
        }
        View { window: self.window, eps: self.eps.to_string(), n: self.n, seed: self.seed, claims: &self.claims }
            .serialize(s)
    }
}

/// Parses `p/q`, an integer, or a finite decimal such as `0.3` into an exact rational.
pub fn parse_rational(src: &str) -> Result<GaussRational> {
    let s = src.trim();
    let bad = || Error::Parse { pos: 0, token: s.to_string(), message: "expected a rational p/q or decimal".into() };
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{int}{frac}");
        let num = BigInt::from_str(&digits).map_err(|_| bad())?;
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        return Ok(GaussRational::real(BigRational::new(num, den)));
    }
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
    let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
    if q == BigInt::from(0) {
        return Err(bad());
    }
    Ok(GaussRational::real(BigRational::new(p, q)))
}

/// Everything a check may consult. `mul` is the product used by the
/// structure-constant checks; tests swap it to inject faults.
#[derive(Clone)]
pub struct AuditContext {
    pub cfg: AuditConfig,
    pub mul: fn(&Element, &Element) -> Element,
}

impl AuditContext {
    pub fn new(cfg: AuditConfig) -> Self {
        Self { cfg, mul: |x, y| x.mul(y) }
    }

    pub(crate) fn commutator(&self, x: &Element, y: &Element) -> Element {
        &(self.mul)(x, y) - &(self.mul)(y, x)
    }
}

pub(crate) struct Outcome {
    pub status: Status,
    pub witness: Value,
    pub notes: String,
}

fn panic_message(p: &(dyn std::any::Any + Send)) -> String {
    p.downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| p.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "non-string panic payload".into())
}

fn is_empty_witness(v: &Value) -> bool {
    match v {
        Value::Null => true,
        Value::Object(m) => m.is_empty(),
        Value::Array(a) => a.is_empty(),
        Value::String(s) => s.is_empty(),
        _ => false,
    }
}

/// Runs the registry with the default product.
pub fn run_audit(cfg: &AuditConfig) -> Result<Vec<ClaimReport>> {
    run_audit_with(&AuditContext::new(cfg.clone()))
}

/// Runs every selected check; a check that errors or panics becomes a FAIL
/// report and the run carries on. Reports are ordered by claim id.
pub fn run_audit_with(ctx: &AuditContext) -> Result<Vec<ClaimReport>> {
    ctx.cfg.validate()?;
    let selected: Vec<&ClaimSpec> = claim_specs()
        .iter()
        .filter(|c| ctx.cfg.claims.as_ref().map_or(true, |ids| ids.contains(&c.id)))
        .collect();
    let mut reports: Vec<ClaimReport> = selected
        .par_iter()
        .map(|spec| {
            let check = checks::lookup(&spec.id);
            let outcome = match catch_unwind(AssertUnwindSafe(|| check(ctx))) {
                Ok(Ok(o)) => o,
                Ok(Err(e)) => Outcome {
                    status: Status::Fail,
                    witness: serde_json::json!({ "error": e.to_string() }),
                    notes: "check returned an error".into(),
                },
                Err(p) => Outcome {
                    status: Status::Fail,
                    witness: serde_json::json!({ "panic": panic_message(p.as_ref()) }),
                    notes: "check panicked".into(),
                },
            };
            let mut witness = outcome.witness;
            if matches!(outcome.status, Status::Fail | Status::Amended) && is_empty_witness(&witness) {
                witness = serde_json::json!({ "diagnostic": outcome.notes.clone() });
            }
            ClaimReport {
                id: spec.id.clone(),
                anchor: spec.anchors.join(", "),
                quote: spec.quote.clone(),
                status: outcome.status,
                witness,
                notes: outcome.notes,
            }
        })
        .collect();
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(reports)
}

/// Claim ids whose status differs from the shipped expectation.
pub fn unexpected_statuses(reports: &[ClaimReport]) -> Vec<(String, Status, Status)> {
    reports
        .iter()
        .filter_map(|r| {
            let spec = claim_specs().iter().find(|c| c.id == r.id)?;
            (spec.expected != r.status).then(|| (r.id.clone(), spec.expected, r.status))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Structured,
}

impl FromStr for ReportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "structured" => Ok(ReportFormat::Structured),
            other => Err(Error::Invalid(format!("unknown report format `{other}` (text|structured)"))),
        }
    }
}

pub fn render_report(reports: &[ClaimReport], cfg: &AuditConfig, format: ReportFormat) -> String {
    match format {
        ReportFormat::Structured => {
            #[derive(Serialize)]
            struct Doc<'a> {
                version: &'static str,
                config: &'a AuditConfig,
                claims: &'a [ClaimReport],
            }
            let mut s = serde_json::to_string_pretty(&Doc { version: "1", config: cfg, claims: reports })
                .expect("report serializes");
            s.push('\n');
            s
        }
        ReportFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "{:<14} {:<13} {:<44} SUMMARY", "ID", "STATUS", "ANCHOR");
            for r in reports {
                let summary = r.notes.split(". ").next().unwrap_or("");
                let _ = writeln!(out, "{:<14} {:<13} {:<44} {}", r.id, r.status.as_str(), r.anchor, summary);
            }
            out
        }
    }
}
