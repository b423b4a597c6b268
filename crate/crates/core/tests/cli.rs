use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn chainrep(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_chainrep"));
    cmd.args(args).env_remove("CHAINREP_CACHE");
    if let Some(dir) = cache {
        cmd.arg("--cache-dir").arg(dir);
    } else {
        cmd.arg("--no-cache");
    }
    cmd.output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn orbits_of_gl2_z4() {
    let v = json(&chainrep(&["orbits", "--ring", "zmod:2^2"], None));
    assert_eq!(v.as_array().map(Vec::len).or_else(|| v["orbits"].as_array().map(Vec::len)), Some(4));
}

#[test]
fn construct_single_orbit() {
    let v = json(&chainrep(&["construct", "--ring", "zmod:2^3", "--beta", "1,1,1", "--path", "ss"], None));
    assert_eq!(v["constructions"][0]["count"], 12);
    assert_eq!(v["constructions"][0]["certificates"]["completeness_sum"], 96);
    assert_eq!(v["all_certificates_pass"], true);
}

#[test]
fn construct_accepts_matrix_literal() {
    let a = json(&chainrep(&["construct", "--ring", "zmod:2^2", "--beta", "[[0,1],[1,1]]"], None));
    assert_eq!(a["constructions"][0]["count"], 3);
}

#[test]
fn bad_input_exits_with_2() {
    for args in [
        &["orbits", "--ring", "zmod:4^2"][..],
        &["orbits", "--ring", "nonsense"],
        &["construct", "--ring", "zmod:2^2", "--beta", "[[1,2,3]]"],
    ] {
        let out = chainrep(args, None);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    }
}

#[test]
fn oversized_group_exits_with_3() {
    let out = chainrep(&["count", "--ring", "zmod:7^3", "--cap", "1000"], None);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn cache_round_trip_gives_same_report() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["count", "--ring", "zmod:3^2", "--full"];
    let cold = chainrep(&args, Some(dir.path()));
    assert!(std::fs::read_dir(dir.path()).unwrap().next().is_some(), "nothing cached");
    let warm = chainrep(&args, Some(dir.path()));
    let uncached = chainrep(&args, None);
    assert_eq!(json(&cold), json(&warm));
    assert_eq!(cold.stdout, uncached.stdout);
}

#[test]
fn csv_and_text_formats() {
    let csv = chainrep(&["count", "--ring", "zmod:2^2", "--format", "csv"], None);
    assert!(csv.status.success());
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.lines().count() > 1);
    let txt = chainrep(&["verify", "--ring", "fqt:2:2", "--format", "text"], None);
    assert!(txt.status.success(), "{}", String::from_utf8_lossy(&txt.stderr));
}

#[test]
fn companion_without_leading_one() {
    let a = json(&chainrep(&["construct", "--ring", "zmod:2^3", "--N", "2", "--beta", "1,1"], None));
    let b = json(&chainrep(&["construct", "--ring", "zmod:2^3", "--beta", "1,1,1"], None));
    assert_eq!(a, b);
    assert_eq!(a["constructions"][0]["count"], 12);
}

#[test]
fn compare_reports_verdict() {
    let v = json(&chainrep(&["compare", "--ring", "zmod:2^2", "--ring2", "fqt:2:2", "--N", "2"], None));
    assert_eq!(v["verdict"], "dimension multisets equal");
    let out = chainrep(&["compare", "--ring", "zmod:2^2", "--ring2", "zmod:3^2"], None);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn lemma_suite_exit_status() {
    let out = chainrep(&["verify", "--ring", "zmod:2^2", "--N", "2", "--suite", "lemmas"], None);
    assert_eq!(out.status.code(), Some(0));
}
