use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cellcat")).args(args).output().expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let value = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), value)
}

#[test]
fn tl_dimensions() {
    let (code, v) = run_json(&["tl", "dim", "4", "2"]);
    assert_eq!((code, v["dimension"].clone()), (0, json!(5)));
    let (code, v) = run_json(&["tl", "dim", "1", "2"]);
    assert_eq!((code, v["dimension"].clone()), (0, json!(0)));
    let out = run(&["tl", "dim", "6", "6", "--format", "text"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "132\n");
}

#[test]
fn tl_gram() {
    let (code, v) = run_json(&["tl", "gram", "3", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["matrix"], json!([[[0, 1], [1]], [[1], [0, 1]]]));
    assert_eq!(v["determinant"], json!([-1, 0, 1]));
    let out = run(&["tl", "gram", "3", "1", "--format", "text"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "[δ, 1]\n[1, δ]\ndet = δ^2 - 1\n");
    assert_eq!(run(&["tl", "gram", "3", "2"]).status.code(), Some(2));
}

#[test]
fn tl_compose() {
    let e1 = r#"{"n":2,"m":2,"pairs":[[1,2],[3,4]]}"#;
    let (code, v) = run_json(&["tl", "compose", e1, e1]);
    assert_eq!(code, 0);
    assert_eq!(v["terms"][0]["coeff"], json!([0, 1]));
    let (_, again) = run_json(&["tl", "compose", &v.to_string(), r#"{"n":2,"m":0,"pairs":[[1,2]]}"#]);
    assert_eq!((again["n"].clone(), again["m"].clone()), (json!(2), json!(0)));
    assert_eq!(again["terms"][0]["coeff"], json!([0, 0, 1]));
    assert_eq!(run(&["tl", "compose", "{bad", e1]).status.code(), Some(2));
    assert_eq!(run(&["tl", "compose", r#"{"n":1,"m":1,"pairs":[[1,2]]}"#, e1]).status.code(), Some(2));
    assert_eq!(run(&["tl", "compose", r#"{"n":2,"m":2,"pairs":[[1,3],[2,4]]}"#, e1]).status.code(), Some(2));
}

#[test]
fn tl_relations() {
    let (code, v) = run_json(&["tl", "relations", "--max-n", "6"]);
    assert_eq!((code, v["status"].clone()), (0, json!("pass")));
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["holds"] == json!(true)));
    assert_eq!(run(&["tl", "relations", "--max-n", "0"]).status.code(), Some(2));
}

#[test]
fn verify_tl_passes() {
    let (code, v) = run_json(&["verify", "tl", "--max-n", "4"]);
    assert_eq!((code, v["status"].clone()), (0, json!("pass")));
    assert_eq!(v["runs"][0]["summary"]["C-3"], json!({ "checked": 125, "passed": 125 }));
    assert_eq!(v["inferred_order"]["acyclic"], json!(true));
    assert_eq!(v["inferred_refined_by_declared"], json!(true));
    let (code, v) = run_json(&["verify", "tl", "--max-n", "3", "--order", "both"]);
    assert_eq!((code, v["runs"].as_array().unwrap().len()), (0, 2));
}

#[test]
fn verify_tl_reversed_fails_with_witness() {
    let (code, v) = run_json(&["verify", "tl", "--order", "reversed", "--max-n", "3"]);
    assert_eq!((code, v["status"].clone()), (1, json!("fail")));
    let failing: Vec<&Value> = v["runs"][0]["reports"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["status"] == json!("fail"))
        .collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().all(|r| r["axiom"] == json!("C-3") && r["witness"].is_object()));
}

#[test]
fn verify_sl2_passes() {
    let (code, v) = run_json(&["verify", "sl2", "--max-n", "4"]);
    assert_eq!((code, v["status"].clone()), (0, json!("pass")));
    assert!(v["counting"].as_array().unwrap().iter().all(|c| c["holds"] == json!(true)));
    assert!(v["conventions"].is_object());
    let (code, v) = run_json(&["verify", "sl2"]);
    assert_eq!((code, v["max_n"].clone()), (0, json!(3)));
    assert_eq!(run(&["verify", "sl2", "--order", "reversed", "--max-n", "2"]).status.code(), Some(1));
}

#[test]
fn bounds_and_usage_errors() {
    assert_eq!(run(&["verify", "tl", "--max-n", "0"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "sl2", "--max-n", "9"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "tl", "--order", "sideways"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn qgrp_canon() {
    let (code, v) = run_json(&["qgrp", "canon", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["elements"].as_array().unwrap().len(), 4);
    assert_eq!(v["partition_sizes"], json!({ "0": 1, "2": 3 }));
    let first = &v["elements"][0];
    for key in ["leading", "terms", "lambda", "hi", "lo"] {
        assert!(first.get(key).is_some(), "missing {key}");
    }
    let (code, v) = run_json(&["qgrp", "canon", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["elements"], json!([{ "leading": "", "terms": { "": { "0": 1 } }, "lambda": 0, "hi": true, "lo": true }]));
}

#[test]
fn qgrp_compare() {
    let (code, v) = run_json(&["qgrp", "compare", "4"]);
    assert_eq!((code, v["matched"].clone()), (0, json!(true)));
    let pairs = v["attempts"][0]["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 2);
    assert!(pairs.iter().all(|p| p["sign"].is_i64() && p["exponent"].is_i64()));
    assert_eq!(run(&["qgrp", "compare", "3"]).status.code(), Some(2));
    let (code, v) = run_json(&["qgrp", "conventions"]);
    assert_eq!(code, 0);
    assert_eq!(v["half_lattice"], json!("positive"));
}

#[test]
fn output_is_deterministic() {
    let a = run(&["verify", "tl", "--max-n", "3", "--order", "both", "--seed", "11"]);
    let b = run(&["verify", "tl", "--max-n", "3", "--order", "both", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["verify", "tl", "--max-n", "3", "--order", "both", "--seed", "12"]);
    assert_eq!(c.status.code(), Some(0));
    let dir = std::env::temp_dir().join(format!("cellcat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let d = run(&["verify", "tl", "--max-n", "3", "--order", "both", "--seed", "11", "--out", path.to_str().unwrap()]);
    assert_eq!(d.status.code(), Some(0));
    assert!(d.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}
