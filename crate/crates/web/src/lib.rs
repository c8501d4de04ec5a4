//! Browser bindings. Every export takes and returns JSON text so the page
//! needs no generated types.

use hahnval::apprtype::ValueBound;
use hahnval::ops::{run, Request};
use hahnval::ordval::{fmt_q, qi};
use hahnval::reldeg::rel_degree;
use hahnval::typefile::{Session, TypeSpec};
use hahnval::{parse_poly, Error, Result};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

fn respond(r: Result<Value>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({"error": e.kind(), "message": e.to_string()}).to_string(),
    }
}

fn parse_request(text: &str) -> Result<Request> {
    serde_json::from_str(text).map_err(|e| Error::parse(e.column(), e.to_string()))
}

/// Runs any request understood by the command line, e.g.
/// `{"op": "eval", "p": 3, "poly": "X^2 + X", "x": "1 + t^(1/2)"}`.
#[wasm_bindgen]
pub fn run_request(request: &str) -> String {
    respond(parse_request(request).and_then(|r| run(&r, &Session::default())))
}

/// Relative degree on a bundled type together with the per-approximant table
/// of `v(x − c_n)`, `v(f(x) − f(c_n))` and the predicted `β + h·v(x − c_n)`.
#[wasm_bindgen]
pub fn degree_table(curated: &str, p: u32, poly: &str) -> String {
    respond(degree_table_value(curated, p as u64, poly))
}

pub fn degree_table_value(curated: &str, p: u64, poly: &str) -> Result<Value> {
    let session = Session::default();
    let ty = TypeSpec::curated(curated, p).build(&session)?;
    let f = parse_poly(poly, p)?;
    let rd = rel_degree(&ty, &f, &session.settings)?;
    let an = ty.analyze(&f, &session.settings)?;
    let mut rows = Vec::new();
    for n in 0..ty.len() {
        let gap = ty.gap(n);
        let inc = an.increment_value(0, n)?;
        let predicted = &rd.beta + &(gap * qi(rd.h as i64));
        rows.push(json!({
            "n": n + 1,
            "gap": fmt_q(gap),
            "increment": inc.to_text(),
            "predicted": fmt_q(&predicted),
            "on_law": inc == ValueBound::Exact(predicted.into()),
        }));
    }
    Ok(json!({
        "h": rd.h,
        "beta": fmt_q(&rd.beta),
        "dist": ty.distance()?.cut.to_string(),
        "image_distance": rd.image_distance(&ty.distance()?.cut)?.to_string(),
        "rows": rows,
    }))
}

/// Names of the bundled types.
#[wasm_bindgen]
pub fn curated_names() -> String {
    json!(hahnval::curated::NAMES).to_string()
}
