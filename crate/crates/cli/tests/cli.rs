use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::Value;

const SCHEMA: &str = include_str!("../schema/output.schema.json");

fn cayrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cayrep"))
        .args(args)
        .env_remove("CAYREP_BUDGET")
        .output()
        .expect("binary runs")
}

fn doc(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn assert_valid(v: &Value) {
    let schema: Value = serde_json::from_str(SCHEMA).unwrap();
    let compiled = JSONSchema::compile(&schema).expect("schema compiles");
    if let Err(errors) = compiled.validate(v) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("schema violations: {msgs:#?}");
    };
}

#[test]
fn reps_alt5_involutions() {
    let out = cayrep(&["reps", "--group", "alt:5", "--connection", r#"{"named":"involutions"}"#]);
    assert_eq!(out.status.code(), Some(0));
    let v = doc(&out);
    assert_valid(&v);
    assert_eq!(v["b"], 1);
    assert_eq!(v["classes"][0]["equivalent_to_input"], true);
    assert_eq!(v["k"]["order"], "14400");
}

#[test]
fn reps_rejects_non_normal_set() {
    let out = cayrep(&["reps", "--group", "sym:5", "--connection", r#"{"elements":["(1 2)"]}"#]);
    assert_eq!(out.status.code(), Some(1));
    let v = doc(&out);
    assert_valid(&v);
    assert_eq!(v["error"]["message"], "connection set not normal");
}

#[test]
fn reps_transpositions_two_classes() {
    let out = cayrep(&["reps", "--group", "sym:5", "--connection", r#"{"named":"transpositions"}"#]);
    assert_eq!(out.status.code(), Some(0));
    let v = doc(&out);
    assert_valid(&v);
    assert_eq!(v["b"], 2);
    assert_eq!(v["separations"].as_array().unwrap().len(), 1);
}

#[test]
fn reps_writes_out_file() {
    let path = std::env::temp_dir().join(format!("cayrep-reps-{}.json", std::process::id()));
    let out = cayrep(&[
        "reps",
        "--group",
        "psl2:7",
        "--connection",
        r#"{"classes":["(1 8)(2 7)(3 4)(5 6)"]}"#,
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_valid(&v);
    assert_eq!(v["b"], 1);
}

#[test]
fn group_info_psl2_7() {
    let out = cayrep(&["group", "info", "--group", "psl2:7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = doc(&out);
    assert_valid(&v);
    assert_eq!(v["order"], 168);
    assert_eq!(v["aut_order"], 336);
    assert_eq!(v["simple"], true);
    assert_eq!(v["classes"].as_array().unwrap().len(), 6);
}

#[test]
fn autgroup_wreath_certificate() {
    let out = cayrep(&["autgroup", "--group", "sym:5", "--connection", r#"{"named":"odd"}"#]);
    assert_eq!(out.status.code(), Some(0));
    let v = doc(&out);
    assert_valid(&v);
    assert_eq!(v["k"]["strategy"], "symmetric-wreath");
    assert_eq!(v["k"]["wreath"]["cells"], 2);
}

#[test]
fn autgroup_forced_strategy() {
    let out = cayrep(&[
        "autgroup",
        "--group",
        "alt:5",
        "--connection",
        r#"{"named":"involutions"}"#,
        "--strategy",
        "refinement-backtrack",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = doc(&out);
    assert_valid(&v);
    assert_eq!(v["k"]["order"], "14400");
}

#[test]
fn budget_exhaustion_exits_two() {
    let out = cayrep(&[
        "--budget",
        r#"{"element_cap": 100}"#,
        "group",
        "info",
        "--group",
        "sym:5",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let v = doc(&out);
    assert_valid(&v);
    assert_eq!(v["exact"], false);
}

#[test]
fn bad_input_exits_one() {
    for args in [
        &["group", "info", "--group", "nonsense:3"][..],
        &["reps", "--group", "alt:5", "--connection", "{"][..],
        &["--budget", "not json", "group", "info", "--group", "alt:5"][..],
    ] {
        let out = cayrep(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert_valid(&doc(&out));
    }
}

#[test]
fn verify_theorem_simple_alt5() {
    let out = cayrep(&["verify", "theorem-simple", "--group", "alt:5", "--all-class-unions"]);
    assert_eq!(out.status.code(), Some(0));
    let v = doc(&out);
    assert_valid(&v);
    assert_eq!(v["unions"], 14);
    assert_eq!(v["max_b"], 1);
}

#[test]
fn verify_theorem_simple_directed_psl2_7() {
    let out = cayrep(&["verify", "theorem-simple", "--group", "psl2:7", "--directed-only"]);
    assert_eq!(out.status.code(), Some(0));
    let v = doc(&out);
    assert_valid(&v);
    assert!(v["entries"].as_array().unwrap().iter().all(|e| e["inverse_closed"] == false));
}

#[test]
fn verify_section4_m6() {
    let out = cayrep(&["verify", "section4", "--m", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = doc(&out);
    assert_valid(&v);
    assert_eq!(v["passed"], true);
    assert!(v["count"].as_u64().unwrap() >= v["bound"].as_u64().unwrap());
}

#[test]
fn verify_lemmas_passes() {
    let out = cayrep(&["verify", "lemmas"]);
    assert_eq!(out.status.code(), Some(0));
    let v = doc(&out);
    assert_valid(&v);
    assert_eq!(v["suites"].as_array().unwrap().len(), 4);
}

#[test]
fn schema_flag_prints_schema() {
    let out = cayrep(&["--json-schema"]);
    assert_eq!(out.status.code(), Some(0));
    let printed: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(printed, serde_json::from_str::<Value>(SCHEMA).unwrap());
}

#[test]
fn output_is_deterministic() {
    let args = ["reps", "--group", "sym:5", "--connection", r#"{"named":"transpositions"}"#];
    let one = cayrep(&[&["--threads", "1"][..], &args[..]].concat());
    let four = cayrep(&[&["--threads", "4"][..], &args[..]].concat());
    let again = cayrep(&[&["--threads", "4"][..], &args[..]].concat());
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(four.stdout, again.stdout);

    let lemmas = ["verify", "lemmas", "--seed", "7"];
    assert_eq!(cayrep(&lemmas).stdout, cayrep(&lemmas).stdout);
}
