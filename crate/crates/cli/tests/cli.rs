use serde_json::Value;
use std::process::{Command, Output};

fn knotkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotkit")).args(args).output().expect("run knotkit")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = knotkit(&[args, &["--json"]].concat());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn schema() -> jsonschema::JSONSchema {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/schema/knotkit-output.schema.json")).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    jsonschema::JSONSchema::options().with_draft(jsonschema::Draft::Draft202012).compile(&schema).unwrap()
}

fn assert_valid(v: &Value) {
    let s = schema();
    if let Err(errors) = s.validate(v) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("schema violations: {msgs:?}");
    };
}

#[test]
fn trefoil_braid() {
    let v = json(&["inv", "BR(2; 1 1 1)"]);
    assert_eq!(v["alexander"], serde_json::json!([[-1, 1], [0, -1], [1, 1]]));
    assert_eq!(v["signature"], -2);
    assert_eq!(v["determinant"], 3);
    assert_valid(&v);
}

#[test]
fn unknot() {
    let v = json(&["inv", "U"]);
    assert_eq!(v["alexander"], serde_json::json!([[0, 1]]));
    assert_eq!(v["signature"], 0);
    assert_eq!(v["determinant"], 1);
    assert_valid(&v);
}

#[test]
fn family_member_with_double_cover() {
    let v = json(&["inv", "K[1,0]", "--branched", "2"]);
    assert_eq!(v["determinant"], 15);
    assert_eq!(v["branched"][0]["invariant_factors"], serde_json::json!([15]));
    assert!(v["annotations"].as_array().unwrap().iter().any(|a| a["quantity"] == "4-ball genus" && a["value"] == "1"));
    assert_valid(&v);
    let text = stdout(&knotkit(&["inv", "K[1,0]", "--branched", "2"]));
    assert!(text.contains("H1(S2)") && text.contains("Z/15"), "{text}");
}

#[test]
fn augmented_link() {
    let v = json(&["inv", "AUG[J,1,left]"]);
    assert_eq!(v["components"], 3);
    assert!(v["alexander"].is_null());
    assert!(!v["conway"].as_array().unwrap().is_empty());
    assert_valid(&v);
}

#[test]
fn family_k() {
    let v = json(&["family", "K", "n=1..2", "m=0..1"]);
    let rows = v["rows"].as_array().unwrap();
    let names: Vec<&str> = rows.iter().map(|r| r["member"].as_str().unwrap()).collect();
    assert_eq!(names, ["K[1,0]", "K[1,1]", "K[2,0]", "K[2,1]"]);
    let constant = |r: &Value| r["invariants"]["alexander"].as_array().unwrap().iter().find(|t| t[0] == 0).unwrap()[1].as_i64().unwrap();
    let constants: Vec<i64> = rows.iter().map(constant).collect();
    assert_eq!(constants, [-3, -15, -1, -5]);
    assert_valid(&v);
}

#[test]
fn family_r_and_annulus_twists() {
    let v = json(&["family", "R", "m=0..2"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r["invariants"]["alexander"] == serde_json::json!([[-2, -1], [0, 3], [2, -1]])));
    assert_valid(&v);

    let v = json(&["family", "AT[J,1,left]", "n=-2..2"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    for r in rows {
        assert_eq!(r["invariants"]["alexander"], rows[0]["invariants"]["alexander"]);
        assert_eq!(r["invariants"]["signature"], rows[0]["invariants"]["signature"]);
    }
    assert_valid(&v);
}

#[test]
fn deterministic_across_jobs() {
    let a = knotkit(&["family", "K", "n=-1..1", "m=0..1", "--jobs", "1"]);
    let b = knotkit(&["family", "K", "n=-1..1", "m=0..1", "--jobs", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_suites() {
    let o = knotkit(&["verify", "lemma-alexander"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("lemma-alexander: PASS (18 of 18 checks)"));
    let o = knotkit(&["verify", "oracle-burau", "--json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert_valid(&v);
}

#[test]
fn corrupted_template_fails_with_diff() {
    let dir = tempfile::tempdir().unwrap();
    let src = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/templates");
    for f in ["j_left.band", "j_right.band", "k.band", "r.band"] {
        std::fs::copy(format!("{src}/{f}"), dir.path().join(f)).unwrap();
    }
    let r = std::fs::read_to_string(dir.path().join("r.band")).unwrap();
    std::fs::write(dir.path().join("r.band"), r.replace("pierce outer-under", "pierce outer-over")).unwrap();
    let o = knotkit(&["verify", "remark-sakuma", "--templates", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("FAIL") && text.contains("expected: 3 - t^2 - t^-2"), "{text}");
}

#[test]
fn exit_codes() {
    assert_eq!(knotkit(&["inv", "X[1,2"]).status.code(), Some(2));
    assert_eq!(knotkit(&["inv", "Q[1]"]).status.code(), Some(2));
    assert_eq!(knotkit(&["family", "K", "n=1..2"]).status.code(), Some(2));
    assert_eq!(knotkit(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(knotkit(&["inv", "K[1,-1]"]).status.code(), Some(3));
    assert_eq!(knotkit(&["inv", "BR(2; 1 1)", "--branched", "2"]).status.code(), Some(3));
    assert_eq!(knotkit(&["inv", "U", "--branched", "1"]).status.code(), Some(2));
}

#[test]
fn schema_rejects_malformed_output() {
    let s = schema();
    assert!(!s.is_valid(&serde_json::json!({ "schema_version": 1, "pass": "yes", "reports": [] })));
    assert!(!s.is_valid(&serde_json::json!({ "schema_version": 1, "pattern": "K", "rows": [{ "member": "K[1,0]", "params": {} }] })));
    let mut v = json(&["inv", "U"]);
    v["extra"] = serde_json::json!(1);
    assert!(!s.is_valid(&v));
}
