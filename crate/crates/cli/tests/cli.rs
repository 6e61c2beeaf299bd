use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_supersplit"));
    c.env_remove("SUPERSPLIT_REPORT_DIR");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn build(dir: &Path, example: &str, n: usize) -> PathBuf {
    let path = dir.join(format!("{example}-{n}.json"));
    let out = run(&["build-example", example, "--n", &n.to_string(), "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn read_json(path: &Path) -> Value {
    serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap()
}

#[test]
fn split_structures_report_split() {
    let dir = TempDir::new().unwrap();
    for example in ["j-r", "g-r"] {
        let file = build(dir.path(), example, 2);
        let out = run(&["split", file.to_str().unwrap()]);
        assert_eq!(code(&out), 0);
        let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(report["split"], Value::Bool(true));
        assert_eq!(report["structure"], if example == "j-r" { "acs" } else { "metric" });
    }
}

#[test]
fn split_summary_goes_to_stdout_when_writing_a_file() {
    let dir = TempDir::new().unwrap();
    let file = build(dir.path(), "nowhere-split-acs", 2);
    let report = dir.path().join("r.json");
    let out = run(&["split", file.to_str().unwrap(), "--out", report.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "SPLIT\n");
    assert_eq!(read_json(&report)["finalNilpotentZero"], Value::Bool(true));
}

#[test]
fn malformed_input_exits_3() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, b"{ not json").unwrap();
    assert_eq!(code(&run(&["split", bad.to_str().unwrap()])), 3);
    assert_eq!(code(&run(&["check", bad.to_str().unwrap()])), 3);
    assert_eq!(code(&run(&["split", dir.path().join("missing.json").to_str().unwrap()])), 3);

    let row: Value = serde_json::json!([[], [], [], []]);
    let wrong = serde_json::json!({"kind": "endo", "p": 2, "q": 2, "entries": [row, row, row]});
    std::fs::write(&bad, wrong.to_string()).unwrap();
    let out = run(&["split", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("dimension"));
}

#[test]
fn structure_that_is_not_almost_complex_is_rejected() {
    let dir = TempDir::new().unwrap();
    let y = build(dir.path(), "y-eta", 2);
    assert_eq!(code(&run(&["split", y.to_str().unwrap()])), 3);
    let out = run(&["check", y.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let j = build(dir.path(), "nowhere-split-acs", 2);
    let out = run(&["check", j.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["kind"], "acs");
}

#[test]
fn usage_errors_exit_4() {
    assert_eq!(code(&run(&["suite", "--n", "0"])), 4);
    assert_eq!(code(&run(&["suite", "--bogus"])), 4);
    assert_eq!(code(&run(&["suite", "--suite", "nope"])), 4);
    assert_eq!(code(&run(&["build-example", "j-r", "--n", "0"])), 4);
    assert_eq!(code(&run(&[])), 4);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn suite_filtering_and_determinism() {
    let a = run(&["suite", "--n", "2", "--suite", "paths"]);
    assert_eq!(code(&a), 0);
    let report: Value = serde_json::from_str(&stdout(&a)).unwrap();
    let checks = report["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 2);
    assert!(checks.iter().all(|c| c["suite"] == "paths" && c["status"] == "pass"));

    let args = ["suite", "--n", "2", "--suite", "lemma,solver", "--trials", "2", "--seed", "9"];
    let (x, y) = (run(&args), run(&args));
    assert_eq!(x.stdout, y.stdout);
    let report: Value = serde_json::from_str(&stdout(&x)).unwrap();
    let names: Vec<&str> = report["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert!(report["checks"].as_array().unwrap().iter().all(|c| !c["anchor"].as_str().unwrap().is_empty()));
}

#[test]
fn report_directory_from_environment() {
    let dir = TempDir::new().unwrap();
    let out = bin()
        .args(["suite", "--n", "2", "--suite", "paths"])
        .env("SUPERSPLIT_REPORT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("2 checks, 0 failed"));
    let report = read_json(&dir.path().join("suite.json"));
    assert_eq!(report["passed"], Value::Bool(true));
}

#[test]
fn eval_normalizes_and_evaluates() {
    let dir = TempDir::new().unwrap();
    let one = |num: &str, den: &str| serde_json::json!([{"odd": [], "coeff": [{"exp": [1, 0], "num": num, "den": den}]}]);
    let zero = serde_json::json!([]);
    let t = serde_json::json!({
        "kind": "endo", "p": 2, "q": 2,
        "entries": [
            [one("2", "4"), zero, zero, zero],
            [zero, zero, zero, zero],
            [zero, zero, zero, zero],
            [zero, zero, zero, zero],
        ]
    });
    let file = dir.path().join("t.json");
    std::fs::write(&file, t.to_string()).unwrap();
    let out = run(&["eval", file.to_str().unwrap(), "--at", "3,7/2"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    // x1 / 2 at x1 = 3
    let c = &v["evaluations"][0]["tensor"]["entries"][0][0][0]["coeff"][0];
    assert_eq!((c["num"].as_str(), c["den"].as_str()), (Some("3"), Some("2")));
    assert_eq!(v["evaluations"][0]["point"][1]["den"], "2");

    assert_eq!(code(&run(&["eval", file.to_str().unwrap(), "--at", "1"])), 4);
    let out = run(&["eval", file.to_str().unwrap(), "--points", "4"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["evaluations"].as_array().unwrap().len(), 4);
}
