//! The `reproduce` report.
//!
//! Schema (version 1):
//!
//! ```text
//! { "schema_version": 1, "seed": u64, "selection": [id],
//!   "claims": [{ "id", "criterion", "description",
//!                "checks": [{ "name", "relation", "expected", "computed",
//!                             "exact"?, "tolerance"?, "pass" }],
//!                "pass", "notes": [str], "wall_time_ms"? }],
//!   "summary": { "total", "passed", "failed" } }
//! ```
//!
//! `exact` holds `{"expected": [num, den], "computed": [num, den]}` when the
//! rational path produced the value. `wall_time_ms` is present only when
//! timings were requested, so untimed reports are byte-identical per seed.

use std::time::Instant;

use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use crate::claims::{claim_seed, registry, Claim};
use crate::exact::{exact_pair, to_f64};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `|computed - expected| <= tolerance`
    Approx,
    /// `computed <= expected + tolerance`
    AtMost,
    /// `computed >= expected - tolerance`
    AtLeast,
    /// Exact equality (rationals, flags, counts, strings).
    Equal,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub relation: Relation,
    pub expected: Value,
    pub computed: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub pass: bool,
}

impl Check {
    fn numeric(name: &str, relation: Relation, expected: f64, computed: f64, tol: f64) -> Self {
        let pass = match relation {
            Relation::Approx => (computed - expected).abs() <= tol,
            Relation::AtMost => computed <= expected + tol,
            Relation::AtLeast => computed >= expected - tol,
            Relation::Equal => computed == expected,
        };
        Check {
            name: name.into(),
            relation,
            expected: json!(expected),
            computed: json!(computed),
            exact: None,
            tolerance: Some(tol),
            pass,
        }
    }

    pub fn approx(name: &str, expected: f64, computed: f64, tol: f64) -> Self {
        Self::numeric(name, Relation::Approx, expected, computed, tol)
    }

    pub fn at_most(name: &str, bound: f64, computed: f64, tol: f64) -> Self {
        Self::numeric(name, Relation::AtMost, bound, computed, tol)
    }

    pub fn at_least(name: &str, bound: f64, computed: f64, tol: f64) -> Self {
        Self::numeric(name, Relation::AtLeast, bound, computed, tol)
    }

    pub fn rational(name: &str, expected: &BigRational, computed: &BigRational) -> Self {
        Check {
            name: name.into(),
            relation: Relation::Equal,
            expected: json!(to_f64(expected)),
            computed: json!(to_f64(computed)),
            exact: Some(json!({
                "expected": exact_pair(expected),
                "computed": exact_pair(computed),
            })),
            tolerance: None,
            pass: expected == computed,
        }
    }

    pub fn equal<T: Serialize + PartialEq>(name: &str, expected: T, computed: T) -> Self {
        Check {
            name: name.into(),
            relation: Relation::Equal,
            pass: expected == computed,
            expected: json!(expected),
            computed: json!(computed),
            exact: None,
            tolerance: None,
        }
    }

    pub fn flag(name: &str, computed: bool) -> Self {
        Self::equal(name, true, computed)
    }
}

/// What a claim's computation returns.
#[derive(Debug, Default)]
pub struct Outcome {
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl Outcome {
    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClaimReport {
    pub id: String,
    pub criterion: String,
    pub description: String,
    pub checks: Vec<Check>,
    pub pass: bool,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReproReport {
    pub schema_version: u32,
    pub seed: u64,
    pub selection: Vec<String>,
    pub claims: Vec<ClaimReport>,
    pub summary: Summary,
}

impl ReproReport {
    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn claim(&self, id: &str) -> Option<&ClaimReport> {
        self.claims.iter().find(|c| c.id == id)
    }
}

fn run_claim(claim: &Claim, seed: u64, timings: bool) -> ClaimReport {
    let start = Instant::now();
    let mut outcome = Outcome::default();
    if let Err(e) = (claim.run)(claim_seed(seed, claim.id), &mut outcome) {
        outcome.push(Check::equal(
            "computation completed",
            "ok".to_string(),
            e.to_string(),
        ));
    }
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    ClaimReport {
        id: claim.id.into(),
        criterion: claim.criterion.into(),
        description: claim.description.into(),
        pass: !outcome.checks.is_empty() && outcome.checks.iter().all(|c| c.pass),
        checks: outcome.checks,
        notes: outcome.notes,
        wall_time_ms: timings.then_some(elapsed),
    }
}

/// Runs the selected claims in registry order. Unknown ids are an error.
pub fn reproduce(selection: &[String], seed: u64, timings: bool) -> Result<ReproReport, String> {
    let all = registry();
    if let Some(unknown) = selection
        .iter()
        .find(|id| !all.iter().any(|c| c.id == id.as_str()))
    {
        return Err(format!(
            "unknown claim id `{unknown}` (see `reproduce --list`)"
        ));
    }
    let claims: Vec<ClaimReport> = all
        .iter()
        .filter(|c| selection.iter().any(|id| id == c.id))
        .map(|c| run_claim(c, seed, timings))
        .collect();
    let passed = claims.iter().filter(|c| c.pass).count();
    Ok(ReproReport {
        schema_version: SCHEMA_VERSION,
        seed,
        selection: all
            .iter()
            .filter(|c| selection.iter().any(|id| id == c.id))
            .map(|c| c.id.to_string())
            .collect(),
        summary: Summary {
            total: claims.len(),
            passed,
            failed: claims.len() - passed,
        },
        claims,
    })
}
