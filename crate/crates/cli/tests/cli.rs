use std::path::Path;
use std::process::{Command, Output};

use orderforge::Report;

const BIN: &str = env!("CARGO_BIN_EXE_orderforge");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const HEAD: &str = "[ring]\nfield = Q\nvars = u, v, w\n[tasks]\n";

#[test]
fn passing_file_exits_zero_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let task = write(dir.path(), "a.task", &format!("{HEAD}depth ideal=(u,v,w) module=R expect=3\n"));
    let out = dir.path().join("a.json");
    let o = run(&["run", &task, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("[pass] #1 line 5: depth"));
    let report = Report::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report.tasks[0].value.as_deref(), Some("3"));
    assert_eq!(report.hash, report.compute_hash());
    let c = run(&["check", out.to_str().unwrap()]);
    assert_eq!(c.status.code(), Some(0));
}

#[test]
fn rejected_literal_pair_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let task = write(
        dir.path(),
        "t.task",
        &format!("{HEAD}theorem1 algebra=quaternion(-1,-1) f=u*i+v g=w*j expect=certified\ncodim ideal=(u) expect=1\n"),
    );
    let o = run(&["run", &task]);
    assert_eq!(o.status.code(), Some(1));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("expected value = certified, got rejected"));
    assert!(text.contains("[pass] #2"));
}

#[test]
fn malformed_polynomial_exits_two_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let task = write(dir.path(), "bad.task", &format!("{HEAD}depth ideal=(u^) module=R\n"));
    let o = run(&["run", &task]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("5:16:"));
}

#[test]
fn unknown_task_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let task = write(dir.path(), "u.task", &format!("{HEAD}frobnicate ideal=(u)\n"));
    let o = run(&["run", &task]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("unknown task `frobnicate`"));
}

#[test]
fn check_flags_a_tampered_report() {
    let dir = tempfile::tempdir().unwrap();
    let task = write(dir.path(), "a.task", &format!("{HEAD}fitting module=koszul_syzygy\n"));
    let out = dir.path().join("a.json");
    assert_eq!(run(&["run", &task, "--out", out.to_str().unwrap()]).status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap().replace("\"3\"", "\"2\"");
    let bad = write(dir.path(), "bad.json", &text);
    let c = run(&["check", &bad]);
    assert_eq!(c.status.code(), Some(1));
    assert!(String::from_utf8(c.stdout).unwrap().contains("hash mismatch"));
    let again = run(&["run", &task, "--check", &bad]);
    assert_eq!(again.status.code(), Some(1));
}

#[test]
fn missing_file_is_a_usage_error() {
    assert_eq!(run(&["run", "/nonexistent/x.task"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn certified_order_report_reruns_under_check() {
    let dir = tempfile::tempdir().unwrap();
    let task = concat!(env!("CARGO_MANIFEST_DIR"), "/../../tasks/syzygy_order.task");
    let out = dir.path().join("s.json");
    assert_eq!(run(&["run", task, "--out", out.to_str().unwrap()]).status.code(), Some(0));
    let report = Report::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(report.tasks.last().unwrap().certificate.is_some());
    let c = run(&["check", out.to_str().unwrap()]);
    assert_eq!(c.status.code(), Some(0), "{}", String::from_utf8_lossy(&c.stdout));
    let again = run(&["run", task, "--check", out.to_str().unwrap()]);
    assert_eq!(again.status.code(), Some(0));
}
