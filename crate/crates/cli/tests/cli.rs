use std::process::{Command, Output};

use serde_json::Value;

fn coxlen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxlen"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = coxlen(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    assert_eq!(v["schema"], "coxlen/1");
    v
}

fn json_err(args: &[&str]) -> Value {
    let out = coxlen(args);
    assert_eq!(out.status.code(), Some(1), "{args:?}");
    let v: Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    assert_eq!(v["schema"], "coxlen/1");
    v
}

#[test]
fn roots_catalog() {
    assert_eq!(json_ok(&["roots", "A2"])["positive_roots"].as_array().unwrap().len(), 3);
    let d4 = json_ok(&["roots", "D4"]);
    assert_eq!(d4["positive_count"], 12);
    assert_eq!(d4["exponents"], serde_json::json!([1, 3, 3, 5]));
    let a3 = json_ok(&["roots", "A3"]);
    // Positive roots are listed in ascending lexicographic order.
    assert_eq!(a3["positive_roots"][0]["root"], serde_json::json!([0, 0, 1, -1]));
    assert_eq!(a3["positive_roots"][5]["root"], serde_json::json!([1, 0, 0, -1]));
    let err = json_err(&["roots", "Zx9"]);
    assert_eq!(err["error"]["kind"], "invalid-root-system");
}

#[test]
fn length_examples() {
    let v = json_ok(&["length", "A2", "t[1,0]"]);
    assert_eq!((v["lower"].as_u64(), v["upper"].as_u64()), (Some(2), Some(2)));
    assert_eq!(v["exact"], true);
    assert_eq!(v["certificate"], "translation-2k");

    let v = json_ok(&["length", "A3", "r(1,0)"]);
    assert_eq!((v["lower"].as_u64(), v["exact"].as_bool()), (Some(1), Some(true)));

    let v = json_ok(&["length", "A3", "t[1,1,1]*r(1,0)*r(4,0)*r(6,0)"]);
    assert!(v["lower"].as_u64().unwrap() >= 3);
    assert!(v["upper"].as_u64().unwrap() <= 6);
}

#[test]
fn oracle_window_flag() {
    // Theory alone gives max(k, l0) = 2; the oracle settles the value at 3.
    let v = json_ok(&["length", "A2", "t[1,-1]*r(1,0)"]);
    assert_eq!((v["lower"].as_u64(), v["exact"].as_bool()), (Some(2), Some(false)));
    let v = json_ok(&["length", "A2", "t[1,-1]*r(1,0)", "--window", "3"]);
    assert_eq!(v["exact"], true);
    assert_eq!(v["certificate"], "oracle-certified");
    assert_eq!(v["lower"], 3);
    // Too small a window leaves the upper bound open.
    let v = json_ok(&["length", "A2", "t[1,-1]*r(1,0)", "--window", "0"]);
    assert_eq!((v["lower"].as_u64(), v["upper"].as_u64()), (Some(3), None));
}

#[test]
fn element_round_trip() {
    for (spec, src) in [
        ("A2", "r(1,2)*t[3,-1]*r(3,0)"),
        ("B2", "r(4,-1)*r(2,1)*r(3,0)"),
        ("A3", "t[1,1,1]*r(1,0)*r(4,0)*r(6,0)"),
        ("G2", "e"),
    ] {
        let first = json_ok(&["length", spec, src]);
        let printed = first["element"].as_str().unwrap();
        let second = json_ok(&["length", spec, printed]);
        assert_eq!(second["element"], first["element"], "{spec} {src}");
    }
}

#[test]
fn parse_errors_have_positions() {
    let v = json_err(&["length", "A2", "t[1,0]*r(2"]);
    assert_eq!(v["error"]["kind"], "parse");
    assert_eq!(v["error"]["position"], 10);
    let v = json_err(&["dimension", "A2", "[1,0,0]"]);
    assert_eq!(v["error"]["kind"], "invalid-input");
}

#[test]
fn dimension_examples() {
    let v = json_ok(&["dimension", "D4", "[2,2,1,1]", "--all-minimal"]);
    assert_eq!(v["k"], 2);
    assert_eq!(v["minimal_subspaces"].as_array().unwrap().len(), 3);
    assert_eq!(json_ok(&["dimension", "A2", "[0,0]"])["k"], 0);
    assert_eq!(json_ok(&["dimension", "A2", "[1,-1]"])["k"], 2);
}

#[test]
fn factor_translation_word() {
    let v = json_ok(&["factor", "A2", "t[1,-1]"]);
    assert_eq!(v["witness_length"], 4);
    let w = v["witness"].as_str().unwrap();
    // The witness is itself a valid element expression for t[1,-1].
    assert_eq!(json_ok(&["length", "A2", w])["element"], "t[1,-1]");
    assert_eq!(v["move_origin"].as_str().unwrap().matches('r').count(), 2);
}

#[test]
fn experiments() {
    let v = json_ok(&["experiment", "solomon", "--type", "B2"]);
    assert_eq!(v["polynomial"], serde_json::json!([1, 4, 3]));
    assert_eq!(v["factored"], "(1+x)(1+3x)");

    let v = json_ok(&["experiment", "a3-crossing"]);
    assert_eq!((v["total"].as_u64(), v["both_crossing"].as_u64()), (Some(16), Some(0)));
    assert_eq!(v["coverage"], "6/6");

    let v = json_ok(&["experiment", "uc-powers", "--max-n", "4"]);
    for row in v["rows"].as_array().unwrap() {
        assert_eq!(row["lr"].as_u64().unwrap(), row["n"].as_u64().unwrap() + 2);
    }

    let v = json_ok(&["experiment", "properties", "--cases", "20", "--seed", "7"]);
    assert_eq!(v["passed"], true);
}

#[test]
fn census_csv() {
    let out = coxlen(&["experiment", "census", "--type", "A2", "--radius", "1", "--window", "2", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("lambda,k,lower,upper,certificate"));
    assert_eq!(lines.count(), 9);
    assert!(text.contains("\"[1,-1]\",2,4,4,oracle-certified"));
}

#[test]
fn failing_experiment_exits_nonzero() {
    // Window 0 cannot reach offset-1 reflections, so certification fails.
    let out = coxlen(&["experiment", "census", "--type", "A2", "--radius", "1", "--window", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let stdout: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(stdout["passed"], false);
    let stderr = String::from_utf8(out.stderr).unwrap();
    let failure: Value = serde_json::from_str(stderr.lines().next().unwrap()).unwrap();
    assert_eq!(failure["failure"]["name"], "oracle-certified");
}

#[test]
fn uc_command() {
    let v = json_ok(&["uc", "abcabc", "--cross-check"]);
    assert_eq!((v["ls"].as_u64(), v["lr"].as_u64()), (Some(6), Some(4)));
    assert_eq!(v["unrestricted"], 4);
    assert_eq!(json_ok(&["uc", "abcca"])["reduced"], "aba");
    let v = json_err(&["uc", "abd"]);
    assert_eq!(v["error"]["position"], 2);
}

#[test]
fn out_flag_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.json");
    let p = path.to_str().unwrap();
    let args = ["experiment", "f-lambda", "--type", "A2", "--radius", "1", "--out", p];
    assert!(coxlen(&args).status.success());
    let first = std::fs::read_to_string(&path).unwrap();
    assert!(coxlen(&args).status.success());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), first);
    let v: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 9);
}
