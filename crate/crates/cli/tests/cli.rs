use std::process::{Command, Output};

use serde_json::Value;

fn altperm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_altperm")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = altperm(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    altperm(args).status.code().unwrap()
}

#[test]
fn count_examples() {
    assert_eq!(stdout(&["count", "--pattern", "2143", "--length", "8", "--class", "alt-up"]), "462\n");
    assert_eq!(stdout(&["count", "--pattern", "2143", "--length", "2"]), "1\n");
    let big = stdout(&["count", "--pattern", "2143", "--length", "100", "--method", "formula"]);
    assert_eq!(big.trim(), altperm::count_even_formula(50).to_string());
    assert!(big.trim().len() >= 49);
    let tree = stdout(&["count", "--pattern", "2143", "--length", "100", "--method", "tree"]);
    assert_eq!(tree, big);
}

#[test]
fn count_other_classes() {
    assert_eq!(stdout(&["count", "--pattern", "2143", "--length", "7", "--class", "alt-down"]), "110\n");
    assert_eq!(stdout(&["count", "--pattern", "123", "--length", "6", "--class", "all"]), "132\n");
    assert_eq!(stdout(&["count", "--pattern", "3142", "--length", "9", "--class", "des-3"]), "642\n");
}

#[test]
fn series_examples() {
    let args = ["series", "--pattern", "4321", "--class", "alt-up", "--ns", "2,4,6,8,10,12"];
    assert_eq!(stdout(&args), "1,5,61,744,10329,157586\n");
    let tsv = stdout(&["--format", "tsv", "series", "--pattern", "2143", "--ns", "2,4,6"]);
    assert_eq!(tsv, "2\t1\n4\t5\n6\t42\n");
}

#[test]
fn series_json_round_trips() {
    let out = stdout(&["--format", "json", "series", "--pattern", "2143", "--ns", "2,4,6,8"]);
    let series: altperm::CountSeries = serde_json::from_str(&out).unwrap();
    assert_eq!(series.pattern.to_string(), "2143");
    let counts: Vec<String> = series.counts().iter().map(ToString::to_string).collect();
    assert_eq!(counts, ["1", "5", "42", "462"]);
}

#[test]
fn tree_examples() {
    let labels = stdout(&["tree", "--rule", "rect-syt", "--depth", "1", "--labels"]);
    assert_eq!(labels, "(2,3),(2,4),(2,5),(3,4),(3,5)\n");
    assert_eq!(stdout(&["tree", "--rule", "alt-even-2143", "--depth", "0"]), "1\n");
    assert_eq!(stdout(&["tree", "--rule", "alt-odd-2143", "--depth", "5"]), "17136\n");
    assert_eq!(code(&["tree", "--rule", "nope", "--depth", "1"]), 2);
}

#[test]
fn biject_examples() {
    assert_eq!(stdout(&["biject", "--perm", "12"]), "1;2;3\n");
    assert_eq!(stdout(&["biject", "--perm", "2314"]), "1,4;2,5;3,6\n");
    assert_eq!(stdout(&["biject", "--tableau", "1,4;2,5;3,6"]), "2314\n");
    assert_eq!(stdout(&["biject", "--perm", "1"]), "1,2;3\n");
    assert_eq!(stdout(&["biject", "--tableau", "1,2;3"]), "1\n");
}

#[test]
fn odd_up_down_input_is_converted_and_noted() {
    let out = stdout(&["biject", "--perm", "132"]);
    let mut lines = out.lines();
    let t = lines.next().unwrap();
    assert!(lines.next().unwrap().contains("reverse-complement 213"));
    assert_eq!(stdout(&["biject", "--perm", "213"]), format!("{t}\n"));
    assert_eq!(stdout(&["biject", "--tableau", t]), "213\n");
}

#[test]
fn biject_json_uses_tableau_schema() {
    let out = stdout(&["--format", "json", "biject", "--perm", "2314"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["tableau"]["shape"], serde_json::json!([2, 2, 2]));
    assert_eq!(v["tableau"]["shifted"], Value::Bool(false));
    assert_eq!(v["tableau"]["rows"], serde_json::json!([[1, 4], [2, 5], [3, 6]]));
}

#[test]
fn biject_errors() {
    assert_eq!(code(&["biject", "--perm", "21x"]), 2);
    assert_eq!(code(&["biject", "--tableau", "1,a;2"]), 2);
    // neither 2143 nor 1243 is up-down; <2,2,1> is in neither tableau family
    assert_eq!(code(&["biject", "--perm", "2143"]), 1);
    assert_eq!(code(&["biject", "--perm", "1243"]), 1);
    assert_eq!(code(&["biject", "--tableau", "1,2;3,4;5"]), 1);
    assert_eq!(code(&["biject", "--perm", "12", "--tableau", "1;2;3"]), 2);
}

#[test]
fn verify_examples() {
    let out = stdout(&["verify", "--table", "2"]);
    assert!(out.ends_with("PASS\n"));
    let out = stdout(&["verify", "--table", "all", "--max-n", "9"]);
    assert!(out.ends_with("PASS\n"));
    assert!(out.contains("skipped: row 1 n=10"));
    assert_eq!(code(&["verify", "--table", "6"]), 2);
}

#[test]
fn verify_json_lists_cells() {
    let out = stdout(&["--format", "json", "verify", "--table", "1", "--max-n", "7"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["pass"], Value::Bool(true));
    assert_eq!(v["tables"][0]["cells"].as_array().unwrap().len(), 24);
    assert_eq!(v["tables"][0]["skipped"].as_array().unwrap().len(), 12);
}

#[test]
fn equiv_groups_3142_with_3241_and_4132() {
    let out = stdout(&["--format", "tsv", "equiv", "--len", "4", "--class", "alt-even", "--max-n", "10"]);
    assert!(out.lines().any(|l| l.starts_with("3142,3241,4132\t")), "{out}");
    assert_eq!(code(&["equiv", "--len", "4", "--class", "sideways"]), 2);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&[]), 2);
    assert_eq!(code(&["count", "--pattern", "2143"]), 2);
    assert_eq!(code(&["count", "--pattern", "1324", "--length", "8", "--method", "tree"]), 2);
    assert_eq!(code(&["count", "--pattern", "2143", "--length", "4", "--class", "des-0"]), 2);
    assert_eq!(code(&["--format", "xml", "count", "--pattern", "2143", "--length", "4"]), 2);
}

#[test]
fn output_is_deterministic() {
    let args = ["--format", "json", "--jobs", "3", "equiv", "--len", "4", "--class", "alt-odd", "--max-n", "9"];
    assert_eq!(stdout(&args), stdout(&args));
    let single = ["--format", "json", "--jobs", "1", "equiv", "--len", "4", "--class", "alt-odd", "--max-n", "9"];
    assert_eq!(stdout(&args), stdout(&single));
}
