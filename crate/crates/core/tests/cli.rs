use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catalan-hyperlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn strip_volatile(mut report: Value) -> Value {
    let obj = report.as_object_mut().unwrap();
    obj.remove("timestamp");
    obj["summary"].as_object_mut().unwrap().remove("wallclock");
    report
}

#[test]
fn eval_k_prints_value_and_error() {
    let out = run(&["eval", "K", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("1.6857503548126"), "{}", stdout(&out));

    let doc = json(&run(&["eval", "K", "0.5", "--json"]));
    let value: f64 = doc["value"].as_str().unwrap().parse().unwrap();
    let err: f64 = doc["err_estimate"].as_str().unwrap().parse().unwrap();
    assert!((value - 1.685750354812596).abs() < 1e-13);
    assert!(err <= 1e-13);
    assert_eq!(doc["method"], "agm");
}

#[test]
fn eval_g_by_beta_series() {
    let out = run(&["eval", "G", "--method", "beta_series"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("0.915965594177"));
}

#[test]
fn eval_domain_error_exits_one() {
    let out = run(&["eval", "K", "1.0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("domain"), "{}", stderr(&out));
}

#[test]
fn eval_usage_errors_exit_two() {
    for args in [
        &["eval", "K"][..],
        &["eval", "Z", "1"],
        &["eval", "K", "0.5", "--method", "beta_series"],
        &["eval", "G", "--method", "simpson"],
        &["eval", "pfq", "2", "1", "0.5", "0.5"],
        &["eval", "A", "not-a-number"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn eval_pfq_accepts_negative_arguments() {
    let doc = json(&run(&["eval", "pfq", "2", "1", "-0.5", "0.5", "1", "0.25", "--json"]));
    let value: f64 = doc["value"].as_str().unwrap().parse().unwrap();
    // (2/π) E(1/2)
    assert!((value - 2.0 / std::f64::consts::PI * 1.467462209339427).abs() < 1e-12);
}

#[test]
fn verify_single_identity_json() {
    let out = run(&["verify", "ramanujan_3f2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["records"].as_array().unwrap().len(), 1);
    assert_eq!(doc["records"][0]["pass"], true);
    assert_eq!(doc["summary"]["total"], 1);
}

#[test]
fn verify_json_matches_golden_file() {
    let golden: Value =
        serde_json::from_str(include_str!("golden/verify_ramanujan_3f2.json")).unwrap();
    for _ in 0..2 {
        let doc = strip_volatile(json(&run(&["verify", "ramanujan_3f2", "--json"])));
        assert_eq!(doc, golden);
    }
}

#[test]
fn verify_unknown_id_lists_valid_ids() {
    let out = run(&["verify", "bogus_id"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("ramanujan_3f2") && err.contains("whipple_quadratic"), "{err}");
}

#[test]
fn verify_usage_errors_exit_two() {
    for args in [
        &["verify"][..],
        &["verify", "--all", "--quad-level", "13"],
        &["verify", "--all", "--grid", "0.9:0.1:0.1"],
        &["verify", "--all", "--grid", "0.1:0.9"],
        &["verify", "--all", "--tol", "-1"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_failure_exits_one() {
    let out = run(&["verify", "a_derivative", "--tol", "1e-18"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn verify_all_passes_in_id_order() {
    let out = run(&["verify", "--all", "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let doc = json(&out);
    let ids: Vec<&str> = doc["identities"]
        .as_array()
        .unwrap()
        .iter()
        .map(|i| i["id"].as_str().unwrap())
        .collect();
    assert!(ids.len() >= 24);
    assert!(ids.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn grid_replaces_sweep_points() {
    let doc = json(&run(&["verify", "e1_parametric", "--grid", "0.25:0.75:0.25", "--json"]));
    let params: Vec<&str> = doc["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["param"].as_str().unwrap())
        .collect();
    assert_eq!(params, ["s=0.25", "s=0.5", "s=0.75"]);
    // fixed-point identities ignore the grid
    let doc = json(&run(&["verify", "pow1", "--grid", "0.25:0.75:0.25", "--json"]));
    assert_eq!(doc["records"].as_array().unwrap().len(), 1);
}

fn record_values(doc: &Value) -> Vec<(String, Value, Value)> {
    doc["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["param"].as_str().unwrap().to_string(), r["lhs"].clone(), r["rhs"].clone()))
        .collect()
}

#[test]
fn flags_change_presentation_only() {
    let ids = ["e1_parametric", "berndt_transform", "pow2"];
    let base = json(&run(&[&["verify"][..], &ids, &["--json"]].concat()));
    for extra in [&["--tol", "1e-3"][..], &["--tol", "1e-14"]] {
        let doc = json(&run(&[&["verify"][..], &ids, extra, &["--json"]].concat()));
        assert_eq!(record_values(&doc), record_values(&base), "{extra:?}");
    }

    let table = stdout(&run(&[&["verify"][..], &ids].concat()));
    for r in base["records"].as_array().unwrap() {
        assert!(table.contains(r["param"].as_str().unwrap()));
    }

    let plain = stdout(&run(&["eval", "C", "0.5"]));
    let doc = json(&run(&["eval", "C", "0.5", "--json"]));
    assert!(plain.contains(doc["value"].as_str().unwrap()), "{plain}");

    let a = json(&run(&["eval", "G", "--method", "k_integral", "--json"]));
    let b = json(&run(&["eval", "--json", "G", "--method=k_integral"]));
    assert_eq!(a, b);
}

#[test]
fn catalog_lists_every_identity() {
    let out = run(&["catalog"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let first = text.lines().next().unwrap();
    assert!(first.starts_with("ramanujan_3f2") && first.contains("Ramanujan"), "{first}");

    let doc = json(&run(&["catalog", "--json"]));
    let entries = doc.as_array().unwrap();
    assert_eq!(text.lines().count(), entries.len());

    // the catalog block has the report's identity schema
    let report = json(&run(&["verify", "ramanujan_3f2", "--json"]));
    let reported = &report["identities"][0];
    for key in entries[0].as_object().unwrap().keys() {
        assert_eq!(entries[0][key], reported[key], "{key}");
    }
    let parsed: Vec<catalan_hyperlab::report::IdentityEntry> = serde_json::from_value(doc.clone()).unwrap();
    assert_eq!(serde_json::to_value(&parsed).unwrap(), doc);
}
