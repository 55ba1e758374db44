use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_transverse-hopf"));
    c.env_remove("TRANSVERSE_HOPF_MAX_TERMS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn table_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("transverse-hopf-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn normalize_example() {
    let o = run(&["normalize", "--n", "1", "Y[1,1]*X[1]"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("config: n=1 max_degree=3 truncation=1 seed=0 samples=20\ncommand: normalize\n"));
    assert!(text.contains("result: X[1]*Y[1,1] + X[1]\n"), "{text}");
}

#[test]
fn tilde_c_of_godbillon_vey() {
    let o = run(&["vanest", "tilde-c", "--n", "1", "--class", "gv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("component 1: -D[1;1,1]"), "{text}");
    assert!(text.contains("cocycle: true"), "{text}");
}

#[test]
fn hopf_operations() {
    let o = run(&["antipode", "--n", "1", "X[1]"]);
    assert!(stdout(&o).contains("result: D[1;1,1]*Y[1,1] - X[1]"), "{}", stdout(&o));
    let o = run(&["counit", "--n", "1", "a(f)*b(g)"]);
    assert!(stdout(&o).contains("result: f*g"), "{}", stdout(&o));
    let o = run(&["mul", "--n", "1", "Y[1,1]", "D[1;1,1]"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["check-hopf-axioms", "--n", "1", "--samples", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("summary: "));
}

#[test]
fn cyclic_and_cocycles() {
    let o = run(&["cyclic", "tau", "--n", "1", "--q", "1", "D[1;1,1]"]);
    assert!(stdout(&o).contains("result: -D[1;1,1]"), "{}", stdout(&o));
    let o = run(&["cocycle-check", "--n", "1", "1:D[1;1,1]"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("cocycle: true"));
    let o = run(&["cocycle-check", "--n", "1", "0:f"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("failed: "), "{}", stderr(&o));
}

#[test]
fn weil_commands() {
    let o = run(&["weil", "closed", "--n", "1", "th[1,1]*R[1,1]"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["weil", "d", "--n", "3", "th[1,2]"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = run(&["weil", "class", "--n", "2", "c2"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn jets_from_a_table_file() {
    let path = table_file("quadratic", "n 1\npsi 1 1 1\npsi 1 2 1/3\n");
    let table = path.to_str().unwrap();
    let o = run(&["jets", "gamma", "--table", table, "--x", "0", "--y", "3/2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("gamma[1;1,1]: 1 + O(1)"), "{}", stdout(&o));
    let o = run(&["jets", "verify", "--table", table, "--samples", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    std::fs::remove_file(path).unwrap();
}

#[test]
fn usage_and_parse_errors_exit_2() {
    let o = run(&["normalize", "--n", "1", "X[1]*"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("parse error at column"), "{}", stderr(&o));
    let o = run(&["normalize", "--n", "1", "X[2]"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["normalize", "--n", "3", "X[1]"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    let o = bin().env("TRANSVERSE_HOPF_MAX_TERMS", "many").args(["normalize", "X[1]"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn term_limit_exits_3() {
    let o = bin().env("TRANSVERSE_HOPF_MAX_TERMS", "10").args(["check-hopf-axioms", "--n", "2"]).output().unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("term limit exceeded"), "{}", stderr(&o));
}

#[test]
fn json_field_names() {
    let o = run(&["--json", "coproduct", "--n", "1", "X[1]"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["checks", "command", "config", "result_terms", "witnesses"]);
    assert_eq!(v["config"]["n"], 1);
    assert_eq!(v["result_terms"].as_array().unwrap().len(), 3);
}

#[test]
fn reports_are_deterministic() {
    let args = ["check-hopf-axioms", "--n", "2", "--seed", "5", "--samples", "6"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}
