//! Running a task file into a [`Report`], the determinism hash, the text
//! rendering, and re-checking a saved report.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::CliError;
use crate::execute::{execute, Outcome};
use crate::program::{compile, parse_ideal, Program, Task};
use crate::taskfile::parse;

pub const TOOL: &str = "orderforge";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Expectation {
    pub key: String,
    pub expected: String,
    pub actual: Option<String>,
    pub met: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TaskReport {
    pub index: usize,
    pub line: usize,
    pub op: String,
    pub args: BTreeMap<String, String>,
    pub status: Status,
    pub value: Option<String>,
    pub fields: BTreeMap<String, Value>,
    pub expectations: Vec<Expectation>,
    pub certificate: Option<Value>,
    pub error: Option<String>,
    /// The error was an internal invariant violation.
    pub internal: bool,
    pub wall_ms: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub seed: u64,
    pub ring: String,
    pub task_file: String,
    pub tasks: Vec<TaskReport>,
    pub summary: Summary,
    /// SHA-256 of [`Report::canonical_json`].
    pub hash: String,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub seed: u64,
    /// Worker threads for intra-task parallelism; `None` uses the default pool.
    pub threads: Option<usize>,
}

fn render(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn run_task(index: usize, task: &Task, seed: u64) -> TaskReport {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(|| execute(&task.kind, seed)));
    let wall_ms = start.elapsed().as_millis() as u64;
    let mut report = TaskReport {
        index,
        line: task.line,
        op: task.op.clone(),
        args: task.args.clone(),
        status: Status::Pass,
        value: None,
        fields: BTreeMap::new(),
        expectations: Vec::new(),
        certificate: None,
        error: None,
        internal: false,
        wall_ms,
    };
    let outcome: Outcome = match result {
        Ok(Ok(o)) => o,
        Ok(Err(e)) => {
            report.status = Status::Error;
            report.internal = e.is_internal();
            report.error = Some(e.to_string());
            return report;
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            report.status = Status::Error;
            report.internal = true;
            report.error = Some(format!("internal invariant violated: {msg}"));
            return report;
        }
    };
    for (key, expected) in &task.expect {
        let actual = if key == "value" {
            Some(outcome.value.clone())
        } else {
            outcome.fields.get(key).map(render)
        };
        let met = actual.as_deref() == Some(expected.as_str());
        if !met {
            report.status = Status::Fail;
        }
        report.expectations.push(Expectation {
            key: key.clone(),
            expected: expected.clone(),
            actual,
            met,
        });
    }
    report.value = Some(outcome.value);
    report.fields = outcome.fields;
    report.certificate = outcome.certificate;
    report
}

pub fn run_program(source: &str, program: &Program, seed: u64) -> Report {
    let tasks: Vec<TaskReport> = program
        .tasks
        .iter()
        .enumerate()
        .map(|(k, t)| run_task(k + 1, t, seed))
        .collect();
    let mut summary = Summary::default();
    for t in &tasks {
        match t.status {
            Status::Pass => summary.passed += 1,
            Status::Fail => summary.failed += 1,
            Status::Error => summary.errors += 1,
        }
    }
    let mut report = Report {
        tool: TOOL.into(),
        version: env!("CARGO_PKG_VERSION").into(),
        seed,
        ring: program.ring.to_string(),
        task_file: source.to_string(),
        tasks,
        summary,
        hash: String::new(),
    };
    report.hash = report.compute_hash();
    report
}

fn in_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Usage(format!("cannot build a pool of {n} threads: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Parses, compiles and runs a task file given as text.
pub fn run_source(source: &str, opts: RunOptions) -> Result<Report, CliError> {
    let program = compile(&parse(source)?)?;
    in_pool(opts.threads, || run_program(source, &program, opts.seed))
}

impl Report {
    /// The report without wall times or hash, as compact JSON.
    pub fn canonical_json(&self) -> String {
        let mut r = self.clone();
        r.hash.clear();
        for t in &mut r.tasks {
            t.wall_ms = 0;
        }
        serde_json::to_string(&r).expect("reports serialize")
    }

    pub fn compute_hash(&self) -> String {
        format!("{:x}", Sha256::digest(self.canonical_json().as_bytes()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Report, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Report(e.to_string()))
    }

    /// 0 when every expectation is met, 2 on an internal invariant
    /// violation, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.tasks.iter().any(|t| t.internal) {
            2
        } else if self.summary.failed + self.summary.errors > 0 {
            1
        } else {
            0
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}  seed={}  ring={}", self.tool, self.version, self.seed, self.ring);
        for t in &self.tasks {
            let status = match t.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Error => "ERROR",
            };
            let args: Vec<String> = t
                .args
                .iter()
                .map(|(k, v)| {
                    if v.contains(char::is_whitespace) {
                        format!("{k}=\"{v}\"")
                    } else {
                        format!("{k}={v}")
                    }
                })
                .collect();
            let _ = write!(out, "[{status}] #{} line {}: {} {}", t.index, t.line, t.op, args.join(" "));
            match (&t.value, &t.error) {
                (Some(v), _) => {
                    let _ = writeln!(out, " -> {v}  ({} ms)", t.wall_ms);
                }
                (None, Some(e)) => {
                    let _ = writeln!(out, "\n    error: {e}");
                }
                _ => {
                    let _ = writeln!(out);
                }
            }
            for e in t.expectations.iter().filter(|e| !e.met) {
                let _ = writeln!(
                    out,
                    "    expected {} = {}, got {}",
                    e.key,
                    e.expected,
                    e.actual.as_deref().unwrap_or("(no such field)")
                );
            }
        }
        let _ = writeln!(
            out,
            "summary: {} passed, {} failed, {} errors",
            self.summary.passed, self.summary.failed, self.summary.errors
        );
        let _ = writeln!(out, "hash: {}", self.hash);
        out
    }
}

#[derive(Clone, Debug, Default)]
pub struct CheckOutcome {
    pub problems: Vec<String>,
}

impl CheckOutcome {
    pub fn exit_code(&self) -> i32 {
        if self.problems.is_empty() {
            0
        } else {
            1
        }
    }
}

const LOCI: &[(&str, &str)] = &[
    ("nonfree_locus", "nonfree_codim"),
    ("end_nonfree_locus", "end_nonfree_codim"),
];

/// Re-verifies a saved report: the hash must match its contents, rerunning
/// the embedded task file with the recorded seed must reproduce every task,
/// and every locus in a certificate must have its recorded codimension when
/// parsed back and recomputed.
pub fn check_report(text: &str, threads: Option<usize>) -> Result<CheckOutcome, CliError> {
    let saved = Report::from_json(text)?;
    let mut out = CheckOutcome::default();
    if saved.compute_hash() != saved.hash {
        out.problems.push(format!("hash mismatch: recorded {}, contents give {}", saved.hash, saved.compute_hash()));
    }
    let program = compile(&parse(&saved.task_file)?)?;
    let ring = program.ring.clone();
    for t in &saved.tasks {
        let Some(cert) = &t.certificate else { continue };
        let mut pairs: Vec<(String, Option<&Value>, Option<&Value>)> = LOCI
            .iter()
            .map(|(l, c)| (l.to_string(), cert.get(l), cert.get(c)))
            .collect();
        if let Some(m) = cert.get("maximality").filter(|m| !m.is_null()) {
            pairs.push(("maximality.non_azumaya_locus".into(), m.get("non_azumaya_locus"), m.get("non_azumaya_codim")));
        }
        for (name, locus, codim) in pairs {
            let (Some(Value::String(locus)), Some(Value::String(codim))) = (locus, codim) else { continue };
            let ideal = parse_ideal(&ring, locus)?;
            if ideal.codim().to_string() != *codim {
                out.problems.push(format!(
                    "task #{} {}: {name} {locus} has codim {}, certificate records {codim}",
                    t.index,
                    t.op,
                    ideal.codim()
                ));
            }
        }
    }
    let rerun = in_pool(threads, || run_program(&saved.task_file, &program, saved.seed))?;
    if rerun.tasks.len() != saved.tasks.len() {
        out.problems.push(format!("rerun produced {} tasks, report has {}", rerun.tasks.len(), saved.tasks.len()));
    }
    for (a, b) in saved.tasks.iter().zip(&rerun.tasks) {
        let strip = |t: &TaskReport| {
            let mut t = t.clone();
            t.wall_ms = 0;
            t
        };
        if strip(a) != strip(b) {
            out.problems.push(format!("task #{} {} (line {}) does not reproduce", a.index, a.op, a.line));
        }
    }
    if rerun.hash != saved.hash && out.problems.is_empty() {
        out.problems.push("rerun hash differs from the recorded hash".into());
    }
    Ok(out)
}
