use std::io::Write;
use std::process::{Command, Output};

use premon::budget::{Height, Tri};
use premon::premon::Classification;
use premon::testkit::VerificationReport;
use serde_json::Value;

const Z4: &str = r#"{"family":"finite","size":4,"identity":1,"table":[[0,0,0,0],[0,1,2,3],[0,2,0,2],[0,3,2,1]]}"#;
const H23: &str = r#"{"family":"puiseux","a":2,"b":3}"#;
const M23: &str = r#"{"family":"presented","h":2,"k":3}"#;

fn premon(args: &[&str]) -> Output {
    premon_with(args, None)
}

fn premon_with(args: &[&str], config: Option<&std::path::Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_premon"));
    cmd.args(args).env_remove("PREMON_CONFIG");
    if let Some(path) = config {
        cmd.env("PREMON_CONFIG", path);
    }
    cmd.output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn classify_json(instance: &str, element: &str, extra: &[&str]) -> (i32, Classification) {
    let mut args = vec!["--format", "json", "classify", "--instance", instance, "--element", element];
    args.extend_from_slice(extra);
    let o = premon(&args);
    (code(&o), serde_json::from_str(&stdout(&o)).unwrap())
}

#[test]
fn classify_finite_quark() {
    let (c, r) = classify_json(Z4, "2", &[]);
    assert_eq!(c, 0);
    assert!(!r.is_unit);
    assert_eq!(r.is_quark, Tri::True);
    assert_eq!(r.height, Height::Exact(1));
    let (_, zero) = classify_json(Z4, "0", &[]);
    assert_eq!(zero.is_quark, Tri::False);
    assert_eq!(zero.quark_witness.as_deref(), Some("2"));
    assert_eq!(zero.height, Height::Exact(2));
}

#[test]
fn classify_puiseux_chain_element() {
    let (c, r) = classify_json(H23, "2", &["--strict"]);
    assert_eq!(c, 0);
    assert_eq!(r.is_quark, Tri::False);
    assert_eq!(r.height, Height::Infinite { witnessed_depth: 30 });
    assert_eq!(r.artinian, Tri::False);
    let chain = r.descending_chain.unwrap();
    assert_eq!(&chain[..3], ["2", "4/3", "8/9"]);
}

#[test]
fn inconclusive_answers_exit_three_only_when_strict() {
    let o = premon(&["classify", "--instance", M23, "--element", "x0"]);
    assert_eq!(code(&o), 0);
    let o = premon(&["--strict", "classify", "--instance", M23, "--element", "x0"]);
    assert_eq!(code(&o), 3);
    let (c, r) = classify_json(M23, "y1", &["--strict"]);
    assert_eq!(c, 0);
    assert_eq!(r.is_quark, Tri::True);
}

#[test]
fn config_file_sets_budget_and_flags_override() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "[budget]\nchain_depth = 5").unwrap();
    let args = ["--format", "json", "classify", "--instance", H23, "--element", "2"];
    let o = premon_with(&args, Some(file.path()));
    assert_eq!(code(&o), 0);
    let r: Classification = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.height, Height::Infinite { witnessed_depth: 5 });

    let mut with_flag = args.to_vec();
    with_flag.extend(["--chain-depth", "7"]);
    let o = premon_with(&with_flag, Some(file.path()));
    let r: Classification = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.height, Height::Infinite { witnessed_depth: 7 });

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "[budget]\nchain_depth = 0").unwrap();
    assert_eq!(code(&premon_with(&args, Some(bad.path()))), 2);
    assert_eq!(code(&premon(&[&args[..], &["--node-cap", "0"]].concat())), 2);
}

#[test]
fn instance_from_file() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "{Z4}").unwrap();
    let path = file.path().to_str().unwrap();
    let o = premon(&["classify", "--instance", path, "--element", "2"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("quark"));
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(code(&premon(&["verify", "bogus"])), 2);
    assert_eq!(code(&premon(&["classify", "--instance", H23])), 2);
    assert_eq!(code(&premon(&["classify", "--instance", H23, "--element", "1/5"])), 2);
    assert_eq!(code(&premon(&["classify", "--instance", "/nonexistent/x.json", "--element", "1"])), 2);
    assert_eq!(code(&premon(&["classify", "--instance", r#"{"family":"poly","x":1}"#, "--element", "X"])), 2);
    assert_eq!(code(&premon(&["classify", "--instance", Z4, "--element", "1"])), 0);
    assert_eq!(code(&premon(&["--help"])), 0);
}

#[test]
fn verification_reports_are_json_lines() {
    let o = premon(&["--format", "json", "verify", "lemma", "--n", "2", "--mode", "random", "--count", "5", "--s", "2,inf"]);
    assert_eq!(code(&o), 0);
    let reports: Vec<VerificationReport> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    // 1 + 2 monoids, 5 preorders each
    assert_eq!(reports.len(), 15);
    assert!(reports.iter().all(VerificationReport::passed));
    let stderr = String::from_utf8(o.stderr).unwrap();
    assert!(stderr.contains("15 instances"), "{stderr}");
}

#[test]
fn verification_failure_exits_one() {
    // r = 1/2 is not in the range the coincidence holds for: r^i = 2·r^{i+1}.
    let o = premon(&["verify", "coincidence", "--a", "1", "--b", "2"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL"));
    let o = premon(&["verify", "coincidence"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn suites_pass_with_defaults() {
    for args in [
        &["verify", "cor4", "--n", "2", "--mode", "exhaustive"][..],
        &["verify", "factorable", "--a", "2", "--b", "3"],
        &["verify", "cor5", "--family", "puiseux"],
        &["verify", "acyclic-accp", "--family", "poly"],
        &["verify", "heights", "--n", "3", "--mode", "exhaustive"],
        &["verify", "ladder", "--n", "2", "--mode", "exhaustive"],
        &["verify", "nonquark", "--n", "3", "--seeds", "10"],
    ] {
        let o = premon(args);
        assert_eq!(code(&o), 0, "{args:?}: {}", stdout(&o));
    }
}

#[test]
fn nonquark_reports_the_witness() {
    let o = premon(&["--format", "json", "verify", "nonquark", "--n", "3", "--seeds", "5"]);
    assert_eq!(code(&o), 0);
    let line: Value = serde_json::from_str(stdout(&o).lines().next().unwrap()).unwrap();
    assert_eq!(line["provenance"]["order"], 3);
    assert_eq!(line["provenance"]["table"]["table"], serde_json::json!([[0, 1, 2], [1, 1, 1], [2, 1, 2]]));
}

#[test]
fn chains_are_certified() {
    let o = premon(&["--format", "json", "chain", "--instance", H23, "--length", "4"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["elements"], serde_json::json!(["2", "4/3", "8/9", "16/27"]));
    assert_eq!(v["strict"], true);

    let o = premon(&["--format", "json", "chain", "--instance", r#"{"family":"poly"}"#, "--length", "3"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["elements"], serde_json::json!(["X", "(1/2)X", "(1/4)X"]));
    assert_eq!(v["strict"], true);

    let o = premon(&["--format", "json", "chain", "--instance", M23, "--index", "0", "--length", "3"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["elements"], serde_json::json!(["x0", "x2", "x4"]));

    let o = premon(&["chain", "--instance", H23, "--element", "4/3", "--length", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("4/3 > 8/9"), "{}", stdout(&o));
}

#[test]
fn lengths_grow_with_cap() {
    let o = premon(&["--format", "json", "lengths", "--instance", H23, "--element", "2", "--caps", "3,4,5"]);
    assert_eq!(code(&o), 0);
    let maxima: Vec<u64> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap()["length_set"]["max"].as_u64().unwrap())
        .collect();
    assert_eq!(maxima, [5, 6, 7]);
}

#[test]
fn enumeration_counts() {
    for (n, count) in [(1, 1), (2, 2), (3, 7), (4, 35)] {
        let o = premon(&["--format", "json", "enum", "--n", &n.to_string()]);
        assert_eq!(code(&o), 0);
        assert_eq!(stdout(&o).lines().count(), count);
    }
}
