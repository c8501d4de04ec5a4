//! Operations behind the command line, the corpus and the demo. Each takes a
//! serializable request and returns a JSON object.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::apprtype::{fixes_value, kaplansky_extend, FixedOutcome};
use crate::envelope::{eventual_order, AffineFamily, AffineItem};
use crate::error::{Error, Result};
use crate::ordval::{fmt_q, Cut, GroupValue};
use crate::reldeg::{approx_coefficient, reduced_factor_shape, rel_degree};
use crate::tamegal::{trace_pull_down, TameCyclic};
use crate::text::{parse_poly, parse_series};
use crate::typefile::{Session, TypeSpec};
use crate::valpoly::{binom_val, ValPoly};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conjugate {
    pub sigma: u64,
    pub poly: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum Request {
    Eval {
        #[serde(default)]
        p: Option<u64>,
        poly: String,
        x: String,
        #[serde(default)]
        cap: Option<String>,
    },
    Dist {
        #[serde(rename = "type")]
        ty: TypeSpec,
    },
    Fixes {
        #[serde(rename = "type")]
        ty: TypeSpec,
        poly: String,
    },
    Extend {
        #[serde(rename = "type")]
        ty: TypeSpec,
        poly: String,
    },
    Reldeg {
        #[serde(rename = "type")]
        ty: TypeSpec,
        poly: String,
    },
    ApproxCoeff {
        #[serde(rename = "type")]
        ty: TypeSpec,
        poly: String,
    },
    FactorShape {
        #[serde(rename = "type")]
        ty: TypeSpec,
        poly: String,
        /// Approximant index; defaults to the last one.
        #[serde(default)]
        index: Option<usize>,
    },
    Envelope {
        items: Vec<AffineItem>,
        cut: Cut,
    },
    TameWitness {
        p: u64,
        n: u64,
        sigmas: Vec<u64>,
        ds: Vec<String>,
    },
    TraceGen {
        n: u64,
        #[serde(rename = "type")]
        ty: TypeSpec,
        conjugates: Vec<Conjugate>,
    },
    BinomGrid {
        primes: Vec<u64>,
        max_t: u32,
        max_r: u64,
    },
}

fn check(name: &str, ok: bool) -> Value {
    json!({"name": name, "status": if ok { "pass" } else { "fail" }})
}

fn outcome_json(o: &FixedOutcome) -> Value {
    match o {
        FixedOutcome::Fixed { value } => json!({"fixed": true, "value": value.to_string()}),
        FixedOutcome::NotFixed { h, beta } => json!({"fixed": false, "h": h, "beta": fmt_q(beta)}),
    }
}

fn merge(mut a: Value, b: Value) -> Value {
    if let (Value::Object(a), Value::Object(b)) = (&mut a, b) {
        a.extend(b);
    }
    a
}

/// Whether every reported check passed.
pub fn checks_pass(v: &Value) -> bool {
    v.get("checks")
        .and_then(Value::as_array)
        .map_or(true, |cs| cs.iter().all(|c| c["status"] == "pass"))
}

fn type_and_poly(ty: &TypeSpec, poly: &str, session: &Session) -> Result<(crate::ApproxType, ValPoly)> {
    let p = ty.prime(session)?;
    Ok((ty.build(session)?, parse_poly(poly, p)?))
}

pub fn run(req: &Request, session: &Session) -> Result<Value> {
    let settings = &session.settings;
    let input = serde_json::to_value(req).expect("requests serialize");
    let out = match req {
        Request::Eval { p, poly, x, cap } => {
            let p = session.prime(*p)?;
            let f = parse_poly(poly, p)?;
            let x = session.series(x, p)?;
            let cap: GroupValue = match cap {
                Some(c) => c.parse()?,
                None => GroupValue::Infinity,
            };
            let y = f.eval_capped(&x, &cap);
            let val = match y.val() {
                Ok(v) => v.to_string(),
                Err(_) => format!(">={}", y.precision()),
            };
            json!({"value": y.to_string(), "valuation": val})
        }
        Request::Dist { ty } => {
            let t = ty.build(session)?;
            let d = t.distance()?;
            json!({
                "dist": d.cut.to_string(),
                "lower_bound_only": d.lower_bound_only,
                "immediate": t.is_immediate(),
                "approximants": t.len(),
            })
        }
        Request::Fixes { ty, poly } => {
            let (t, f) = type_and_poly(ty, poly, session)?;
            let r = fixes_value(&t, &f, settings)?;
            merge(outcome_json(&r.outcome), json!({"from": r.from, "cross_checked": r.cross_checked}))
        }
        Request::Extend { ty, poly } => {
            let (t, f) = type_and_poly(ty, poly, session)?;
            json!({"value": kaplansky_extend(&t, &f, settings)?.to_string()})
        }
        Request::Reldeg { ty, poly } => {
            let (t, f) = type_and_poly(ty, poly, session)?;
            let r = rel_degree(&t, &f, settings)?;
            let dist = t.distance()?.cut;
            let image = r.image_distance(&dist)?;
            let p = t.p();
            json!({
                "h": r.h,
                "beta": fmt_q(&r.beta),
                "depth": r.verified_depth,
                "tail_start": r.tail_start,
                "taylor_intercepts": r.taylor_intercepts.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
                "image_distance": image.to_string(),
                "checks": [
                    check("tail-law", true),
                    check("h-power-of-p", is_power_of(r.h, p)),
                    check("h-at-most-degree", r.h as usize <= f.degree().unwrap_or(0)),
                ],
            })
        }
        Request::ApproxCoeff { ty, poly } => {
            let (t, f) = type_and_poly(ty, poly, session)?;
            let ac = approx_coefficient(&t, &f, settings)?;
            let dist_law = ac.rel.image_distance(&t.distance()?.cut)?;
            json!({
                "d": ac.d.to_string(),
                "h": ac.rel.h,
                "beta": fmt_q(&ac.rel.beta),
                "certified_from": ac.certified_from,
                "dist_law": dist_law.to_string(),
                "checks": [check("leading-term", true), check("linear-approximation", true)],
            })
        }
        Request::FactorShape { ty, poly, index } => {
            let (t, f) = type_and_poly(ty, poly, session)?;
            let n = index.unwrap_or(t.len().saturating_sub(1));
            if n >= t.len() {
                return Err(Error::Precondition(format!("approximant {n} does not exist")));
            }
            let d = crate::Series::t_pow(t.p(), -t.gap(n).clone());
            let fs = reduced_factor_shape(&t, &f, n, &d, settings)?;
            json!({
                "h": fs.h,
                "residues": fs.residues.iter().map(|r| r.value()).collect::<Vec<_>>(),
                "root": fs.root.value(),
                "multiplicity": fs.multiplicity,
                "checks": [
                    check("integral", true),
                    check("shape", fs.matches),
                    check("multiplicity", fs.multiplicity as u64 == fs.h),
                ],
            })
        }
        Request::Envelope { items, cut } => {
            let fam = AffineFamily::new(items.clone(), cut.clone())?;
            let ord = eventual_order(&fam)?;
            json!({
                "order": ord.order,
                "threshold": fmt_q(&ord.threshold),
                "max_crossing": ord.max_crossing.as_ref().map(fmt_q),
                "argmin": ord.order.last(),
            })
        }
        Request::TameWitness { p, n, sigmas, ds } => {
            let g = TameCyclic::new(*p, *n)?;
            let sig: Vec<_> = sigmas.iter().map(|k| g.elem(*k)).collect();
            let ds = ds.iter().map(|s| parse_series(s, *p)).collect::<Result<Vec<_>>>()?;
            let w = g.valuation_independence_witness(&sig, &ds)?;
            json!({
                "d": w.d.to_string(),
                "zeta": g.zeta().value(),
                "residue_sum": w.residue_sum.value(),
                "value": w.value.to_string(),
                "candidates_tried": w.candidates_tried,
                "checks": [check("value-is-minimum", true)],
            })
        }
        Request::TraceGen { n, ty, conjugates } => {
            let p = ty.prime(session)?;
            let t = ty.build(session)?;
            let g = TameCyclic::new(p, *n)?;
            let conj = conjugates
                .iter()
                .map(|c| Ok((g.elem(c.sigma), parse_poly(&c.poly, p)?)))
                .collect::<Result<Vec<_>>>()?;
            let r = trace_pull_down(&g, &t, &conj, settings)?;
            json!({
                "coefficients": r.coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "d": r.witness.d.to_string(),
                "proxy": r.proxy.to_string(),
                "h": r.h,
                "h_combined": r.h_combined,
                "checks": [check("h-equals-one", r.h == 1 && r.h_combined == 1)],
            })
        }
        Request::BinomGrid { primes, max_t, max_r } => {
            let mut checked = 0u64;
            let mut failures = Vec::new();
            for &p in primes {
                for t in 1..=*max_t {
                    for r in 2..=*max_r {
                        if r % p == 0 {
                            continue;
                        }
                        checked += 1;
                        if binom_val(p, t, r)? != GroupValue::zero() {
                            failures.push(json!({"p": p, "t": t, "r": r}));
                        }
                    }
                }
            }
            json!({
                "checked": checked,
                "failures": failures,
                "checks": [check("all-zero", failures.is_empty())],
            })
        }
    };
    Ok(merge(json!({"input": input}), out))
}

pub fn is_power_of(h: u64, p: u64) -> bool {
    let mut h = h;
    while h > 1 && h % p == 0 {
        h /= p;
    }
    h == 1
}

/// Exit status for an error: 2 for malformed input, 3 for internal
/// inconsistency, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => 2,
        e if e.is_inconsistency() => 3,
        _ => 1,
    }
}

/// Pushes the type through `f` and reports the image's distance.
pub fn image_distance(ty: TypeSpec, poly: &str, session: &Session) -> Result<Value> {
    let (t, f) = type_and_poly(&ty, poly, session)?;
    let t = Arc::new(t);
    let img = crate::reldeg::pushforward(&t, &f, &session.settings)?;
    Ok(json!({"dist": img.distance()?.cut.to_string(), "approximants": img.len()}))
}
