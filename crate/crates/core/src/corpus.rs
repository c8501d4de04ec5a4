//! The example corpus as executable regressions.

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::ops::{run, Request};
use crate::typefile::Session;

pub const CASES: &str = include_str!("../corpus/cases.json");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub name: String,
    /// Where the expected values come from: `anchor`, `by-hand` or `oracle:<name>`.
    pub source: String,
    pub request: Request,
    pub expect: Map<String, Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseReport {
    pub case: String,
    pub status: &'static str,
    pub expected: Value,
    pub actual: Value,
    pub provenance: String,
}

pub fn cases() -> Vec<Case> {
    serde_json::from_str(CASES).expect("bundled corpus parses")
}

fn run_case(case: &Case, session: &Session) -> CaseReport {
    let actual = match run(&case.request, session) {
        Ok(v) => v,
        Err(e) => json!({"error": e.kind(), "message": e.to_string()}),
    };
    let pass = case.expect.iter().all(|(k, v)| actual.get(k) == Some(v))
        && (case.expect.contains_key("error") || crate::ops::checks_pass(&actual));
    let mut shown = Map::new();
    for k in case.expect.keys() {
        shown.insert(k.clone(), actual.get(k).cloned().unwrap_or(Value::Null));
    }
    CaseReport {
        case: case.name.clone(),
        status: if pass { "pass" } else { "fail" },
        expected: Value::Object(case.expect.clone()),
        actual: Value::Object(shown),
        provenance: case.source.clone(),
    }
}

/// Runs every case whose name contains `filter`, in name order.
pub fn run_corpus(filter: Option<&str>, session: &Session) -> Vec<CaseReport> {
    let mut cs: Vec<Case> =
        cases().into_iter().filter(|c| filter.map_or(true, |f| c.name.contains(f))).collect();
    cs.sort_by(|a, b| a.name.cmp(&b.name));
    cs.iter().map(|c| run_case(c, session)).collect()
}

/// JSON lines, one per case, then a summary object.
pub fn render(reports: &[CaseReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&serde_json::to_string(r).expect("reports serialize"));
        out.push('\n');
    }
    let passed = reports.iter().filter(|r| r.status == "pass").count();
    let summary = json!({"summary": {"total": reports.len(), "passed": passed, "failed": reports.len() - passed}});
    out.push_str(&summary.to_string());
    out.push('\n');
    out
}
