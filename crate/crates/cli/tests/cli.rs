use std::process::{Command, Output};

use serde_json::Value;

fn dwknot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dwknot"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn cn_all_routes() {
    let o = dwknot(&[
        "cn",
        "--montesinos",
        "1/3",
        "--n",
        "3",
        "--route",
        "all",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = &json_lines(&o)[0];
    assert_eq!(v["n"], 3);
    for r in ["formula", "engine", "oracle"] {
        assert_eq!(v["routes"][r], 9, "{r}");
    }
    assert_eq!(v["agree"], true);
}

#[test]
fn cn_text_and_lists() {
    let o = dwknot(&["cn", "--montesinos", "3,3,3", "--n-list", "3,9"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 2);
    assert!(
        text.contains("formula=27 engine=27 oracle=27 agree"),
        "{text}"
    );
    assert!(text.contains("formula=243"), "{text}");
}

#[test]
fn cn_word_and_pd_inputs() {
    let o = dwknot(&[
        "cn", "--word", "rt(3)", "--n", "5", "--route", "engine", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_lines(&o)[0]["routes"]["engine"], 5);

    let pd = dwknot(&["pd", "--montesinos", "2/5"]);
    assert_eq!(pd.status.code(), Some(0));
    let dir = std::env::temp_dir().join(format!("dwknot-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("knot.json");
    std::fs::write(&path, stdout(&pd)).unwrap();
    let o = dwknot(&[
        "cn",
        "--pd",
        path.to_str().unwrap(),
        "--n",
        "5",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = &json_lines(&o)[0];
    assert_eq!(v["routes"]["oracle"], 25);
    assert_eq!(v["routes"]["formula"], Value::Null);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn pd_output_round_trips() {
    let o = dwknot(&["pd", "--word", "rt(2*rt(3))"]);
    let text = stdout(&o);
    let d = dwknot::tangle::from_pd_json(text.trim()).unwrap();
    assert_eq!(d.to_pd_json(), text.trim());
    assert_eq!(d.crossing_count(), 5);
}

#[test]
fn input_errors_exit_1() {
    for args in [
        &["cn", "--montesinos", "1/3", "--n", "4"][..],
        &["cn", "--montesinos", "1/0", "--n", "3"],
        &["cn", "--word", "rt(", "--n", "3"],
        &["invariant", "--word", "0", "--n", "3"],
        &["cn", "--n", "3"],
        &["cn", "--word", "3", "--montesinos", "3", "--n", "3"],
        &["pd", "--pd", "/nonexistent/file.json"],
        &["frobnicate"],
    ] {
        let o = dwknot(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn invariant_report() {
    let o = dwknot(&["invariant", "--word", "-3", "--n", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = &json_lines(&o)[0];
    assert_eq!(v["value_plus"], 9);
    assert_eq!(v["cn"], 9);
    assert_eq!(v["writhe_parity"], 1);

    let o = dwknot(&[
        "invariant",
        "--montesinos",
        "1/3",
        "--n",
        "3",
        "--sign",
        "-",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("F(V-)=-9"), "{}", stdout(&o));
}

#[test]
fn json_output_is_deterministic() {
    let args = [
        "cn",
        "--montesinos",
        "-2,3,5",
        "--n-list",
        "3,5,7",
        "--format",
        "json",
    ];
    let a = dwknot(&args);
    let b = dwknot(&args);
    assert_eq!(a.stdout, b.stdout);
    let args = ["check", "--n-list", "3", "--format", "json"];
    assert_eq!(dwknot(&args).stdout, dwknot(&args).stdout);
}

#[test]
fn check_passes_and_detects_faults() {
    let o = dwknot(&["check", "--n-list", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 failed"));

    let o = dwknot(&["check", "--n-list", "3", "--inject-rot-fault"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(dwknot(&["--help"]).status.code(), Some(0));
    assert_eq!(dwknot(&["--version"]).status.code(), Some(0));
}
