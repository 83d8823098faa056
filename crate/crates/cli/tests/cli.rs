use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slopestab")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn destab_exit_codes() {
    let o = run(&["destab", "dp1", "--L", "3H-E", "--D", "E"]);
    assert_eq!(code(&o), 10);
    assert!(stdout(&o).starts_with("unstable\n"));
    let o = run(&["destab", "dp1", "--L", "3H-E", "--D", "H-E"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("stable\n"));
}

#[test]
fn destab_json_witness_is_below_mu() {
    let o = run(&["--json", "destab", "dp1", "--L", "3H-E", "--D", "E"]);
    let v = json(&o);
    assert_eq!(v["unstable"], true);
    assert_eq!(v["mu_X"], "1");
    assert_eq!(v["epsilon"]["exact"], "2");
    let w = v["witness_c"].as_str().unwrap();
    let (p, q) = w.split_once('/').unwrap();
    let c = p.parse::<f64>().unwrap() / q.parse::<f64>().unwrap();
    assert!(3f64.sqrt() < c && c < 2.0);
}

#[test]
fn slope_values() {
    let o = run(&["--json", "slope", "dp1", "--L", "3H-E", "--D", "E", "--c", "19/10"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["mu_X"], "1");
    assert_eq!(v["mu_c"], "870/931");
    assert_eq!(v["mu_c_below_mu_X"], true);
    assert_eq!(v["epsilon"]["binding"], "H-E");
}

#[test]
fn nef_boundary_polarisation_warns() {
    let o = run(&["slope", "product(2,10)", "--L", "L", "--D", "Fg+E", "--c", "1/2"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("nef but not ample"));
    assert!(stdout(&o).contains("eps(D,L)     n/a"));
    let o = run(&["slope", "product(2,10)", "--L", "E", "--D", "Fg", "--c", "1/2"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn input_errors() {
    let o = run(&["slope", "nosuch", "--L", "H", "--D", "H", "--c", "1"]);
    assert_eq!(code(&o), 3);
    let o = run(&["slope", "dp1", "--L", "3H-2X", "--D", "E", "--c", "1"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("\"-2X\""));
    let o = run(&["slope", "dp1", "--L", "3H-E", "--D", "E", "--c", "one"]);
    assert_eq!(code(&o), 2);
    let o = run(&["destab", "dp1", "--L", "H-E", "--D", "E"]);
    assert_eq!(code(&o), 3);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    fs::write(&bad, "name = \"x\"\nbasis = [\"H\"]\ngram = [[\"1\"]]\ncanonical = \"-3H\"\nbogus = 1\n").unwrap();
    let o = run(&["slope", bad.to_str().unwrap(), "--L", "H", "--D", "H", "--c", "1"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn search_reports() {
    let o = run(&["search", "dp1", "--L", "3H-E", "--bound", "5"]);
    assert_eq!(code(&o), 10);
    assert!(stdout(&o).contains("1 destabiliser among 35 candidates"));
    let o = run(&["--json", "search", "dp2", "--L", "-K", "--bound", "3"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["candidates"], 63);
    assert_eq!(v["destabilisers"].as_array().unwrap().len(), 0);
    let o = run(&["search", "dp2", "--L", "-K", "--bound", "99", "--cap", "1000"]);
    assert_eq!(code(&o), 3);
    let o = run(&["search", "dp1", "--L", "3H-E", "--bound", "4", "--generators", "E,2E"]);
    assert_eq!(code(&o), 10);
}

#[test]
fn strict_certainty() {
    let o = run(&["destab", "k3-shell", "--L", "R1+R2", "--D", "R1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("conditional"));
    let o = run(&["--strict-certainty", "destab", "k3-shell", "--L", "R1+R2", "--D", "R1"]);
    assert_eq!(code(&o), 4);
    let o = run(&["--strict-certainty", "destab", "dp1", "--L", "3H-E", "--D", "E"]);
    assert_eq!(code(&o), 10);
}

fn scan(prefix: &Path) -> (String, String) {
    let o = run(&[
        "cone-scan",
        "dp1",
        "--La",
        "3H-E",
        "--Lb",
        "6H-E",
        "--grid",
        "20",
        "--divisors",
        "E,H-E",
        "--out",
        prefix.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 10);
    let csv = fs::read_to_string(prefix.with_extension("csv")).unwrap();
    let svg = fs::read_to_string(prefix.with_extension("svg")).unwrap();
    (csv, svg)
}

#[test]
fn cone_scan_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = scan(&dir.path().join("a"));
    let b = scan(&dir.path().join("b"));
    assert_eq!(a, b);
    let (csv, svg) = a;
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "t,polarisation,verdict,witness_divisor,witness_c");
    assert_eq!(rows.len(), 20);
    assert!(rows[1..].iter().all(|r| r.contains(",unstable,E,")));
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("<title>").count(), 19);
}

#[test]
fn construct_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.toml");
    let p = cert.to_str().unwrap();
    let o = run(&["construct", "synthetic-highgenus", "--D", "C", "--H", "A", "--out", p]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(&["verify", p]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("certificate verifies"));
    let o = run(&["--strict-certainty", "verify", p]);
    assert_eq!(code(&o), 4);

    let text = fs::read_to_string(&cert).unwrap();
    let tampered = dir.path().join("tampered.toml");
    let line = text.lines().find(|l| l.starts_with("c = ")).unwrap();
    fs::write(&tampered, text.replace(line, "c = \"1/3\"")).unwrap();
    let o = run(&["verify", tampered.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("certificate rejected"));

    let garbled = dir.path().join("garbled.toml");
    fs::write(&garbled, text.replacen("[certificate]", "[certificate", 1)).unwrap();
    assert_eq!(code(&run(&["verify", garbled.to_str().unwrap()])), 2);
}

#[test]
fn catalog_export_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("dp2.toml");
    let o = run(&["catalog", "export", "dp2", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let exported = fs::read_to_string(&out).unwrap();
    assert_eq!(stdout(&run(&["catalog", "export", "dp2"])), exported);
    let from_file = run(&["--json", "destab", out.to_str().unwrap(), "--L", "3H-E1-E2", "--D", "E1"]);
    let from_key = run(&["--json", "destab", "dp2", "--L", "3H-E1-E2", "--D", "E1"]);
    assert_eq!(code(&from_file), code(&from_key));
    let mut a = json(&from_file);
    let mut b = json(&from_key);
    a["surface"] = Value::Null;
    b["surface"] = Value::Null;
    assert_eq!(a, b);

    let list = stdout(&run(&["catalog", "list"]));
    assert!(list.lines().any(|l| l.starts_with("dp1 ")));
}

#[test]
fn verify_suite_single_rows() {
    let o = run(&["verify-suite", "--only", "zero-dim"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("PASS  5 zero-dim"));
    let o = run(&["verify-suite", "--only", "2"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("FAIL  2 product-asymptotics"));
    assert_eq!(code(&run(&["verify-suite", "--only", "nonsense"])), 3);
}
