//! Run reports and their human and machine renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::envelope::{CheckReport, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskError {
    pub code: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskOutcome {
    pub index: usize,
    pub op: String,
    pub structure: Option<String>,
    pub verdict: Verdict,
    pub error: Option<TaskError>,
    pub checks: Vec<CheckReport>,
    pub summary: Option<serde_json::Value>,
    pub millis: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub input: String,
    pub input_sha256: String,
    pub seed: u64,
    pub verdict: Verdict,
    pub tasks: Vec<TaskOutcome>,
    pub millis: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Human,
    Machine,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 3,
        }
    }

    /// The same report with every timing field zeroed.
    pub fn without_timings(&self) -> RunReport {
        let mut r = self.clone();
        r.millis = 0;
        for t in &mut r.tasks {
            t.millis = 0;
            for c in &mut t.checks {
                c.millis = 0;
            }
        }
        r
    }

    pub fn task(&self, op: &str) -> Option<&TaskOutcome> {
        self.tasks.iter().find(|t| t.op == op)
    }
}

pub fn emit_report(report: &RunReport, format: Format) -> String {
    match format {
        Format::Machine => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Human => human(report),
    }
}

fn human(r: &RunReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}  input {}  sha256 {}", r.tool, r.version, r.input, &r.input_sha256[..16]);
    let _ = writeln!(out, "seed {}  verdict {}  {} ms", r.seed, r.verdict, r.millis);
    for t in &r.tasks {
        let target = t.structure.as_deref().unwrap_or("-");
        let _ = writeln!(out, "\n[{}] {} on {}: {} ({} ms)", t.index, t.op, target, t.verdict, t.millis);
        if let Some(e) = &t.error {
            let _ = writeln!(out, "  error {}: {}", e.code, e.message);
        }
        if let Some(s) = &t.summary {
            if let Some(map) = s.as_object() {
                for (k, v) in map {
                    let _ = writeln!(out, "  {k:<18} {v}");
                }
            }
        }
        if !t.checks.is_empty() {
            let _ = writeln!(out, "  {:<24} {:>12} {:>9} {:>8}", "check", "verdict", "instances", "ms");
        }
        for c in &t.checks {
            let _ = writeln!(out, "  {:<24} {:>12} {:>9} {:>8}", c.name, c.verdict.to_string(), c.instances, c.millis);
            if !c.counterexamples.is_empty() {
                let _ = writeln!(out, "    counterexamples:");
                for x in &c.counterexamples {
                    let _ = writeln!(out, "      {x}");
                }
            }
            for x in &c.inconclusive {
                let _ = writeln!(out, "    inconclusive: {x}");
            }
        }
    }
    out
}
