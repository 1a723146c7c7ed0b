use std::process::{Command, Output};

fn loopjones(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loopjones")).args(args).output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn trefoil_loop_reconstructs_rational_forms() {
    let out = loopjones(&["loop", "1 1 1", "--L", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["V"][0]["numerator"], "1");
    assert_eq!(v["V"][1]["numerator"], "u^4 - 2*u^2 + 2 - 2*u^-2 + u^-4");
    assert_eq!(v["checks"]["mmr"]["holds"], true);
}

#[test]
fn link_closure_is_invalid_input() {
    let out = loopjones(&["loop", "1 1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a knot"));
}

#[test]
fn bad_arguments_are_invalid_input() {
    assert_eq!(loopjones(&["loop", "1 x"]).status.code(), Some(1));
    assert_eq!(loopjones(&["loop", "1 1 1", "--floor", "3"]).status.code(), Some(1));
    assert_eq!(loopjones(&["jones", "1 1 1", "--alpha", "1"]).status.code(), Some(1));
    assert_eq!(loopjones(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn uncertified_expansion_exits_partial() {
    let out = loopjones(&["loop", "1 -2 1 -2"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["checks"]["partial"], true);
    assert!(!v["checks"]["diagnostics"].as_array().unwrap().is_empty());
}

#[test]
fn jones_of_trefoil() {
    let out = loopjones(&["jones", "1 1 1", "--alpha", "2", "--L", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["jones"][0]["polynomial"], "s^-2 + s^-6 - s^-8");
}

#[test]
fn text_and_csv_formats() {
    let text = loopjones(&["loop", "1 1 1", "--L", "0", "--format", "text"]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("Delta = u^2 - 1 + u^-2"));
    let csv = loopjones(&["loop", "1 1 1", "--L", "0", "--format", "csv"]);
    let body = String::from_utf8_lossy(&csv.stdout);
    assert!(body.lines().count() > 2, "{body}");
}

#[test]
fn print_config_echoes_defaults() {
    let out = loopjones(&["entropy", "1 -2", "--grid", "4", "--print-config"]);
    assert_eq!(out.status.code(), Some(0));
    let config: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(config["M"], 4);
    assert_eq!(config["alphas"], serde_json::json!([2, 3]));
}

#[test]
fn selftest_passes() {
    let out = loopjones(&["selftest"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn out_file_receives_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mmr.json");
    let out = loopjones(&["mmr", "1 1 1", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap();
    assert_eq!(v["alexander"], "u^2 - 1 + u^-2");
}
