use hahnval_web::{curated_names, degree_table, run_request};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).expect("bindings return JSON")
}

#[test]
fn degree_table_on_theta() {
    let v = parse(degree_table("theta", 3, "X^3 - X - (t^(-1))"));
    assert_eq!(v["h"], 3);
    assert_eq!(v["beta"], "0");
    assert_eq!(v["dist"], "(<0)");
    let rows = v["rows"].as_array().unwrap();
    assert!(!rows.is_empty());
    assert_eq!(rows.last().unwrap()["on_law"], true);
}

#[test]
fn envelope_request() {
    let req = r#"{"op": "envelope", "items": [{"index": 1, "intercept": "0", "slope": 1},
        {"index": 2, "intercept": "-1", "slope": 2}], "cut": "(<1)"}"#;
    let v = parse(run_request(req));
    assert!(v.get("error").is_none(), "{v}");
    assert_eq!(v["argmin"], 2);
}

#[test]
fn errors_come_back_as_json() {
    let v = parse(run_request("{\"op\": \"nope\"}"));
    assert_eq!(v["error"], "parse");
    let v = parse(degree_table("theta", 3, "X^"));
    assert!(v["message"].as_str().is_some());
}

#[test]
fn names_include_theta() {
    let v = parse(curated_names());
    assert!(v.as_array().unwrap().iter().any(|n| n == "theta"));
}
