use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nonassoc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = run(&full);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| {
        panic!("bad json ({e}): {}\n{}", stdout(&o), String::from_utf8_lossy(&o.stderr))
    });
    (v, o.status.code().unwrap())
}

fn assert_report_shape(v: &Value) {
    for key in ["check", "claim_ref", "verdict", "char", "multidegrees", "timing", "warnings", "detail"] {
        assert!(v.get(key).is_some(), "missing {key} in {v}");
    }
}

#[test]
fn dim_prints_component_dimension() {
    let o = run(&["dim", "assym", "--multidegree", "2,2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "dim assosymmetric [2,2] (char 0) = 9");
}

#[test]
fn dim_json_has_report_fields() {
    let (v, code) = json(&["dim", "assym", "--multidegree", "1,1,1,1"]);
    assert_eq!(code, 0);
    assert_report_shape(&v);
    assert_eq!(v["detail"]["dim"], 29);
    assert_eq!(v["verdict"], "pass");
}

#[test]
fn identity_exits_zero_and_non_identity_exits_one() {
    let ok = run(&["check", "assym", "assder(t1,t2,t3,t4)"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = run(&["check", "assym", "jor(t1,t2)", "--mode", "plus"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("not an identity"));
}

#[test]
fn lie_triple_holds_in_plus_mode_mod_five() {
    let (v, code) = json(&["--char", "5", "check", "assym", "lietriple(t1,t2,t3)", "--mode", "plus"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["char"], 5);
    assert_eq!(v["multidegrees"], serde_json::json!(["[1,2,1]"]));
}

#[test]
fn certificate_rows_are_listed() {
    let o = run(&["check", "assym", "assder(t1,t2,t3,t4)", "--certificate"]);
    let s = stdout(&o);
    assert!(s.contains("certificate"), "{s}");
    assert!(s.contains("verified"), "{s}");
    assert!(!s.contains("NOT verified"), "{s}");
}

#[test]
fn expand_macro() {
    let o = run(&["expand", "lsym(t1,t2,t3)"]);
    assert_eq!(
        stdout(&o).trim(),
        "-((t1 t2) t3) + ((t2 t1) t3) + (t1 (t2 t3)) - (t2 (t1 t3))"
    );
}

#[test]
fn sigma_q_accepts_negative_rationals() {
    let o = run(&["sigma-q", "t1 t2", "--q", "-1/2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "(t1 t2) - 1/2 (t2 t1)");
}

#[test]
fn kernel_in_characteristic_three() {
    let (v, code) = json(&["--char", "3", "kernel", "assym", "--multidegree", "3,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["detail"]["dimension"], 1);
}

#[test]
fn koszul_residual_to_order_five() {
    let (v, code) = json(&["koszul"]);
    assert_eq!(code, 0);
    assert_eq!(v["detail"]["dims"], serde_json::json!([1, 2, 7, 29, 136]));
    assert_eq!(v["detail"]["koszul_excluded"], true);
}

#[test]
fn koszul_beyond_five_needs_extended() {
    let o = run(&["koszul", "--order", "7"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--extended"));
}

#[test]
fn albert_sampling_is_deterministic() {
    let (a, code) = json(&["albert", "jor(t1,t2)", "--samples", "4", "--seed", "11"]);
    assert_eq!(code, 0);
    let (b, _) = json(&["albert", "jor(t1,t2)", "--samples", "4", "--seed", "11"]);
    assert_eq!(a["detail"], b["detail"]);
    assert_eq!(a["detail"]["zero_count"], 4);
}

#[test]
fn equiv_detects_equal_systems() {
    let (v, code) = json(&["equiv", "--first", "jor(t1,t2)", "--second", "jor(t2,t1)", "--second", "jor(t1,t2)"]);
    assert_eq!(code, 0, "{v}");
}

#[test]
fn invalid_inputs_exit_two() {
    for args in [
        &["--char", "4", "dim", "assym", "--multidegree", "2"][..],
        &["dim", "no-such-variety", "--multidegree", "2"][..],
        &["check", "assym", "t1 ("][..],
        &["suite", "no-such-suite"][..],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"), "{args:?}");
    }
}

#[test]
fn suite_writes_json_report() {
    let dir = std::env::temp_dir().join(format!("nonassoc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("quasi.json");
    let o = run(&["suite", "quasi", "--output", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("checks passed"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["suite"], "quasi");
    assert_eq!(v["passed"], true);
    for c in v["checks"].as_array().unwrap() {
        assert_report_shape(c);
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn custom_catalog_is_loaded() {
    let dir = std::env::temp_dir().join(format!("nonassoc-cat-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cat.toml");
    std::fs::write(
        &path,
        "[[variety]]\nname = \"left-alt\"\nflavor = \"planar\"\nidentities = [\"A(t1,t1,t2)\"]\n",
    )
    .unwrap();
    let o = run(&["--catalog", path.to_str().unwrap(), "dim", "left-alt", "--multidegree", "2,1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn equiv_detects_inequivalent_systems() {
    let (v, code) = json(&["equiv", "--first", "jor(t1,t2)", "--second", "lietriple(t1,t2,t3)"]);
    assert_eq!(code, 1, "{v}");
    assert_eq!(v["verdict"], "fail");
}
