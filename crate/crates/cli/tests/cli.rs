use std::io::Write;
use std::process::{Command, Output};

fn hahnval(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hahnval")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(stdout(o).trim()).unwrap()
}

#[test]
fn reldeg_on_theta() {
    for p in ["2", "3", "5"] {
        let poly = format!("X^{p} - X - (t^(-1))");
        let o = hahnval(&["--p", p, "--json", "reldeg", "--curated", "theta", "--poly", &poly]);
        assert!(o.status.success());
        let v = json(&o);
        assert_eq!(v["h"].as_u64().unwrap().to_string(), p);
        assert_eq!(v["beta"], "0");
        assert_eq!(v["input"]["poly"], poly.as_str());
        assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
    }
}

#[test]
fn corpus_is_deterministic() {
    let a = hahnval(&["corpus"]);
    let b = hahnval(&["corpus"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let lines: Vec<&str> = text.lines().collect();
    let names: Vec<String> = lines[..lines.len() - 1]
        .iter()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["case"].as_str().unwrap().to_string())
        .collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert!(lines.last().unwrap().contains("\"failed\":0"));
}

#[test]
fn empty_corpus_filter_exits_zero() {
    let o = hahnval(&["corpus", "--filter", "nothing-matches-this"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"total\":0"));
}

#[test]
fn exit_codes() {
    let parse = hahnval(&["--p", "3", "eval", "--poly", "X^", "--x", "t"]);
    assert_eq!(parse.status.code(), Some(2));
    let usage = hahnval(&["reldeg", "--poly", "X"]);
    assert_eq!(usage.status.code(), Some(2));
    let failure = hahnval(&["--p", "3", "reldeg", "--curated", "half-power", "--poly", "X^2 + X"]);
    assert_eq!(failure.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&failure.stderr).contains("not immediate"));
}

#[test]
fn type_file_and_config() {
    let dir = std::env::temp_dir().join(format!("hahnval-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let ty = dir.join("theta.json");
    std::fs::File::create(&ty)
        .unwrap()
        .write_all(
            br#"{"target": "t^(-1/3) + t^(-1/9) + t^(-1/27) + t^(-1/81) + t^(-1/243) + t^(-1/729) + t^(-1/2187) + O(t^(-1/6561))",
                "predicate": "ppow", "cofinality": "limit:0"}"#,
        )
        .unwrap();
    let cfg = dir.join("session.cfg");
    std::fs::write(&cfg, "p = 3\ntail_depth = 5\n").unwrap();
    let o = hahnval(&[
        "--config",
        cfg.to_str().unwrap(),
        "--json",
        "reldeg",
        "--type",
        ty.to_str().unwrap(),
        "--poly",
        "X^3 - X - (t^(-1))",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["h"], 3);
    assert_eq!(v["depth"], 7);
    let o = hahnval(&["--config", cfg.to_str().unwrap(), "--json", "dist", "--type", ty.to_str().unwrap()]);
    assert_eq!(json(&o)["dist"], "(<0)");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn envelope_tame_and_trace() {
    let o = hahnval(&["--json", "envelope", "--item", "1:0:1", "--item", "2:5:2", "--cut", "(+inf)"]);
    let v = json(&o);
    assert_eq!(v["argmin"], 1);
    assert_eq!(v["max_crossing"], "-5");
    let o = hahnval(&["--p", "3", "--json", "tame-witness", "--n", "2", "--sigma", "0", "--sigma", "1", "--d", "1", "--d", "1"]);
    assert_eq!(json(&o)["d"], "1");
    let o = hahnval(&[
        "--p", "3", "--json", "trace-gen", "--curated", "trace", "--n", "2", "--conj", "0:X", "--conj", "1:2*X^0 - X",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["h"], 1);
}

#[test]
fn human_output() {
    let o = hahnval(&["--p", "3", "eval", "--poly", "X^2 + X", "--x", "1 + t^(1/2)"]);
    let s = stdout(&o);
    assert!(s.contains("value = 2 + t^(1)"));
    assert!(!s.contains("input"));
}
