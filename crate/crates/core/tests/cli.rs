//! End-to-end runs of the command-line tool on small inputs.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn workdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("choicegraph-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &PathBuf, file: &str, value: &Value) -> String {
    let path = dir.join(file);
    fs::write(&path, value.to_string()).unwrap();
    path.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_choicegraph"))
        .args(args)
        .output()
        .unwrap()
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn p4(dir: &PathBuf) -> String {
    write(
        dir,
        "p4.json",
        &json!({"vertices": ["a", "b", "c", "d"], "edges": [["a", "b"], ["b", "c"], ["c", "d"]]}),
    )
}

fn rainbow(dir: &PathBuf) -> String {
    write(
        dir,
        "rainbow.json",
        &json!({"kind": "vertex", "colours": {"a": 0, "b": 1, "c": 2, "d": 3}}),
    )
}

#[test]
fn oracle_reports_value_and_witness() {
    let dir = workdir("oracle");
    let g = p4(&dir);
    let d = json_of(&run(&["oracle", "--graph", &g, "--param", "D"]));
    assert_eq!(d["value"], json!(2));
    assert_eq!(d["witness"]["kind"], json!("vertex"));
    let chi = json_of(&run(&["oracle", "--graph", &g, "--param", "chi"]));
    assert_eq!(chi["value"], json!(2));
    let seq = json_of(&run(&["--sequential", "oracle", "--graph", &g, "--param", "D"]));
    assert_eq!(seq, d);
}

#[test]
fn check_reduce_and_chain() {
    let dir = workdir("reduce");
    let (g, c) = (p4(&dir), rainbow(&dir));
    let check = json_of(&run(&["check", "--graph", &g, "--colouring", &c]));
    assert_eq!(check["proper"], json!(true));
    assert_eq!(check["distinguishing"], json!(true));
    let reduced = json_of(&run(&["reduce", "--graph", &g, "--colouring", &c, "--b", "3", "--a", "0"]));
    assert_eq!(reduced["colours"]["d"], json!(0));
    let chain = json_of(&run(&["chain", "--graph", &g, "--colouring", &c]));
    // idempotent self-maps of a 4-set
    assert_eq!(chain["size"], json!(41));
}

#[test]
fn irreducible_greedy_keeps_properness() {
    let dir = workdir("irreducible");
    let (g, c) = (p4(&dir), rainbow(&dir));
    let out = json_of(&run(&["irreducible", "--graph", &g, "--colouring", &c, "--phi", "proper"]));
    let colours = out["colouring"]["colours"].as_object().unwrap();
    let distinct: std::collections::BTreeSet<_> = colours.values().map(|v| v.as_u64()).collect();
    assert_eq!(distinct.len(), 2);
    assert_ne!(colours["a"], colours["b"]);
    assert_ne!(colours["b"], colours["c"]);
    assert_ne!(colours["c"], colours["d"]);
}

#[test]
fn family_build_and_verify() {
    let dir = workdir("family");
    let spec = write(&dir, "spec.json", &json!({"sets": [["a"], ["b", "c"]], "tail_length": 2}));
    let graph = json_of(&run(&["build", "--family", &spec]));
    assert!(graph["vertices"].as_array().unwrap().contains(&json!("a")));
    let csv = dir.join("report.csv");
    let out = run(&["verify", "--family", &spec, "--csv", csv.to_str().unwrap()]);
    let report = json_of(&out);
    assert_eq!(report["summary"]["fail"], json!(0));
    assert!(fs::read_to_string(&csv).unwrap().starts_with("instance,check,status,detail"));
}

#[test]
fn bad_input_exits_with_usage_code() {
    let dir = workdir("bad");
    let g = p4(&dir);
    assert_eq!(run(&["oracle", "--graph", "missing.json", "--param", "D"]).status.code(), Some(2));
    assert_eq!(run(&["oracle", "--graph", &g, "--param", "X"]).status.code(), Some(2));
    let partial = write(&dir, "partial.json", &json!({"kind": "vertex", "colours": {"a": 0}}));
    assert_eq!(run(&["check", "--graph", &g, "--colouring", &partial]).status.code(), Some(2));
}
