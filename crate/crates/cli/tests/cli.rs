use std::io::Write;
use std::process::{Command, Output, Stdio};

use harbourne_core::pullback::klein_incidence;
use serde_json::{json, Value};

fn harbourne(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_harbourne")).args(args).output().expect("binary runs")
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_harbourne"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn profile(e: i64, d: u32, t: Value) -> String {
    json!({"surface": {"g": 0, "e": e}, "class": {"a": 1, "b": e}, "d": d, "t": t, "c0_disjoint": true}).to_string()
}

#[test]
fn hconst_klein_is_minus_three() {
    for e in 4..=10 {
        let p = profile(e, 21, json!({"3": 28 * e, "4": 21 * e}));
        let out = harbourne(&["hconst", "--json", &p]);
        assert_eq!(out.status.code(), Some(0));
        let v = json_of(&out);
        assert_eq!(v["harbourne_constant"], json!({"num": "-3", "den": "1"}));
    }
}

#[test]
fn pullback_pipes_into_hconst() {
    let out = harbourne(&["pullback", "--arrangement", "wiman", "--e", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let p = String::from_utf8(out.stdout).unwrap();
    let out = with_stdin(&["hconst", "-"], &p);
    assert_eq!(json_of(&out)["harbourne_constant"], json!({"num": "-225", "den": "67"}));

    let out = with_stdin(&["hconst", "-", "--format", "pretty", "--decimals", "4"], &p);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("harbourne_constant: -225/67 (~ -3.3582)"), "{text}");
}

#[test]
fn pullback_from_input_and_generic() {
    let out = harbourne(&["pullback", "--e", "5", "--json", r#"{"d":4,"t":{"2":6}}"#]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["t"], json!({"2": 30}));

    let out = harbourne(&["pullback", "--arrangement", "generic-6", "--e", "4"]);
    assert_eq!(json_of(&out)["t"], json!({"2": 60}));

    assert_eq!(harbourne(&["pullback", "--arrangement", "klein", "--e", "3"]).status.code(), Some(1));
    assert_eq!(harbourne(&["pullback", "--arrangement", "hesse", "--e", "4"]).status.code(), Some(1));
}

#[test]
fn validate_reports_failed_check() {
    let p = profile(4, 4, json!({"4": 1, "2": 18}));
    let out = harbourne(&["validate", "--json", &p]);
    assert_eq!(out.status.code(), Some(2));
    let v = json_of(&out);
    assert_eq!(v["valid"], json!(false));
    let failed: Vec<&str> = v["validation"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"no_point_on_all_curves"), "{failed:?}");
}

#[test]
fn invalid_profile_blocks_hconst_with_exit_two() {
    let p = profile(4, 5, json!({"2": 3}));
    let out = harbourne(&["hconst", "--json", &p]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_of(&out)["valid"], json!(false));
}

#[test]
fn malformed_input_exits_one() {
    for args in [
        vec!["hconst", "--json", "{not json"],
        vec!["hconst", "--json", r#"{"surface":{"g":0,"e":4}}"#],
        vec!["bounds", "/nonexistent/profile.json"],
        vec!["validate"],
    ] {
        let out = harbourne(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn cover_and_bounds_on_klein() {
    let p = profile(4, 21, json!({"3": 112, "4": 84}));
    let v = json_of(&harbourne(&["cover", "--json", &p]));
    assert_eq!(v["normalized"]["e_y_norm"], json!({"num": "604", "den": "1"}));
    assert_eq!(v["normalized"]["c1_sq_norm"], json!({"num": "1208", "den": "1"}));
    assert_eq!(v["all_integral"], json!(true));

    let v = json_of(&harbourne(&["bounds", "--json", &p]));
    assert_eq!(v["harbourne"], json!({"num": "-3", "den": "1"}));
    // 42/(49*4) - 27/7
    assert_eq!(v["prop_c0_rhs"], json!({"num": "-51", "den": "14"}));
    assert_eq!(v["hirzebruch_lhs"], json!({"num": "84", "den": "1"}));
    assert_eq!(v["falsifies_hypotheses"], json!(false));
}

#[test]
fn csv_has_header_and_exact_values() {
    let p = profile(4, 45, json!({"3": 480, "4": 180, "5": 144}));
    let out = harbourne(&["hconst", "--json", &p, "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("field,value\n"));
    assert!(text.contains("\nharbourne_constant,-225/67\n"));
}

#[test]
fn scan_point_and_small_grid() {
    let v = json_of(&harbourne(&["bq-scan", "--point", "0", "4", "1", "4", "21"]));
    assert_eq!(v["t2_required"], json!({"num": "105", "den": "1"}));
    assert_eq!(v["t6_required"], json!({"num": "49", "den": "1"}));
    assert_eq!(v["hc2_value"], json!({"num": "142", "den": "1"}));
    assert_eq!(v["feasible"], json!(false));

    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("grid.json");
    std::fs::write(&cfg, r#"{"g":[0,2],"e":[4,6],"a":[1,3],"b_offset":[0,3],"d":[4,30]}"#).unwrap();
    let first = harbourne(&["bq-scan", "--config", cfg.to_str().unwrap()]);
    let second = harbourne(&["bq-scan", "--config", cfg.to_str().unwrap()]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let v = json_of(&first);
    assert_eq!(v["total"], json!(3 * 3 * 3 * 4 * 27));
    assert_eq!(v["feasible_count"], json!(0));
    assert_eq!(v["shortcuts_agree"], json!(true));

    // flags override the config file
    let v = json_of(&harbourne(&["bq-scan", "--config", cfg.to_str().unwrap(), "--d", "21", "21"]));
    assert_eq!(v["total"], json!(3 * 3 * 3 * 4));

    let bad = harbourne(&["bq-scan", "--e", "2", "5"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn gallery_lists_builtins() {
    let v = json_of(&harbourne(&["gallery", "--e", "5"]));
    let names: Vec<&str> = v["arrangements"].as_array().unwrap().iter().map(|a| a["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["klein", "wiman"]);
    assert_eq!(v["arrangements"][0]["pullback"]["t"], json!({"3": 140, "4": 105}));
    assert_eq!(v["arrangements"][1]["plane_harbourne_constant"], json!({"num": "-225", "den": "67"}));
}

#[test]
fn incidence_check_on_klein() {
    let inc = serde_json::to_value(klein_incidence().replicate(4)).unwrap();
    let doc = json!({"surface": {"g": 0, "e": 4}, "class": {"a": 1, "b": 4}, "incidence": inc}).to_string();
    let out = harbourne(&["incidence-check", "--json", &doc]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["audit_passed"], json!(true));
    assert_eq!(v["incidence_rank"], json!(21));
    assert_eq!(v["four_curve_condition"], json!(true));
    assert_eq!(v["profile"]["t"], json!({"3": 112, "4": 84}));

    // wrong class: pairs now meet 5 times, audit fails
    let doc = json!({"surface": {"g": 0, "e": 4}, "class": {"a": 1, "b": 5}, "incidence": inc}).to_string();
    let out = harbourne(&["incidence-check", "--json", &doc]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_of(&out)["audit_passed"], json!(false));
}
