mod common;

use std::process::Command;

use envlab::envelope::{CheckReport, Verdict};
use envlab::workbench::report::{TaskError, TaskOutcome};
use envlab::workbench::{
    corpus_entry, corpus_names, dualize_input, emit_report, load_corpus, parse_str, run_tasks, to_json, Format, RunOptions, RunReport,
};

fn envlab() -> Command {
    Command::new(env!("CARGO_BIN_EXE_envlab"))
}

fn edited(name: &str, from: &str, to: &str) -> String {
    let text = corpus_entry(name).unwrap();
    assert!(text.contains(from), "{from} not in {name}");
    text.replacen(from, to, 1)
}

#[test]
fn bundled_a2_all_shape() {
    let input = load_corpus("FIX-A2-ALL").unwrap();
    assert_eq!((input.modules.len(), input.structures.len(), input.tasks.len()), (3, 1, 4));
}

#[test]
fn unknown_module_names_the_key() {
    let text = edited("FIX-A2-ALL", r#""generators": ["P1", "P2", "S1"]"#, r#""generators": ["P1", "Q7", "S1"]"#);
    let err = parse_str(&text).unwrap_err();
    assert_eq!(err.code(), "E_BAD_INPUT");
    assert!(err.to_string().contains("category.generators[1]") && err.to_string().contains("Q7"), "{err}");
}

#[test]
fn non_prime_characteristic_rejected() {
    let text = edited("FIX-A2-ALL", r#""p": 101"#, r#""p": 100"#);
    assert_eq!(parse_str(&text).unwrap_err().code(), "E_BAD_INPUT");
}

#[test]
fn syntax_errors_carry_a_line() {
    let err = parse_str("{\n  \"field\": { \"kind\": \"prime\", \"p\": 101 },\n  oops\n}").unwrap_err();
    assert_eq!(err.code(), "E_BAD_INPUT");
    assert!(err.to_string().contains("line 3"), "{err}");
}

#[test]
fn schema_round_trip() {
    for name in corpus_names() {
        let a = load_corpus(name).unwrap();
        let b = parse_str(&to_json(&a)).unwrap();
        assert_eq!(a, b, "{name}");
        assert_eq!(to_json(&a), to_json(&b));
    }
}

#[test]
fn duality_is_byte_exact_and_dual_runs() {
    for name in corpus_names() {
        let a = load_corpus(name).unwrap();
        let d = dualize_input(&a);
        assert_ne!(to_json(&d), to_json(&a));
        assert_eq!(to_json(&dualize_input(&d)), to_json(&a), "{name}");
        // the dual input is itself a valid file
        parse_str(&to_json(&d)).unwrap();
    }
}

#[test]
fn empty_task_list_is_empty_pass() {
    let mut input = load_corpus("FIX-A2-ALL").unwrap();
    input.tasks.clear();
    let report = run_tasks(&input, RunOptions::default()).unwrap();
    assert!(report.tasks.is_empty());
    assert_eq!(report.exit_code(), 0);
}

#[test]
fn a2_all_report_numbers() {
    let report = run_tasks(&load_corpus("FIX-A2-ALL").unwrap(), RunOptions::default()).unwrap();
    assert_eq!(report.verdict, Verdict::Pass);
    let s = report.task("envelope").unwrap().summary.as_ref().unwrap();
    assert_eq!(s["gamma_dim"], 5);
    assert_eq!(s["corner_dim"], 3);
    let text = emit_report(&report, Format::Human);
    assert!(!text.contains("counterexamples"));
}

#[test]
fn kron_report_numbers() {
    let report = run_tasks(&load_corpus("FIX-KRON").unwrap(), RunOptions::default()).unwrap();
    assert_eq!(report.verdict, Verdict::Pass, "{}", emit_report(&report, Format::Human));
    let s = report.task("envelope").unwrap().summary.as_ref().unwrap();
    assert_eq!(s["gamma_dim"], 10);
    assert_eq!(s["corner_dim"], 4);
    assert_eq!(s["embedding_dims"]["O(2)"], serde_json::json!([3, 2]));
}

#[test]
fn failing_structure_is_reported_with_counterexample() {
    // declare P2 -> P1 -> S1 with the deflation replaced by the zero map
    let text = edited("FIX-A2-ALL", r#""blocks": { "1": [[1]] }"#, r#""blocks": { "1": [[0]] }"#);
    let text = text.replace(r#""kind": "ambient""#, r#""kind": "generated""#);
    let input = parse_str(&text).unwrap();
    let report = run_tasks(&input, RunOptions::default()).unwrap();
    assert_eq!(report.exit_code(), 1);
    let v = report.task("validate").unwrap();
    assert_eq!(v.verdict, Verdict::Fail);
    assert!(!v.checks[0].counterexamples.is_empty());
    assert!(emit_report(&report, Format::Human).contains("counterexamples"));
    // later tasks still ran
    assert_eq!(report.tasks.len(), 4);
    assert!(report.task("envelope").unwrap().error.is_some());
}

#[test]
fn inconclusive_only_exits_three() {
    let mut check = CheckReport::new("deflation-search");
    check.record(Verdict::Inconclusive, "no deflation found at depth 2");
    let report = RunReport {
        tool: "envlab".into(),
        version: "0".into(),
        input: "synthetic".into(),
        input_sha256: "0".repeat(64),
        seed: 0,
        verdict: check.verdict,
        tasks: vec![TaskOutcome {
            index: 0,
            op: "check:ext-coherence".into(),
            structure: None,
            verdict: check.verdict,
            error: None::<TaskError>,
            checks: vec![check],
            summary: None,
            millis: 0,
        }],
        millis: 0,
    };
    assert_eq!(report.exit_code(), 3);
    let machine = emit_report(&report, Format::Machine);
    let back: RunReport = serde_json::from_str(&machine).unwrap();
    assert_eq!(back, report);
}

#[test]
fn replay_is_deterministic() {
    let input = load_corpus("FIX-A2-SPLIT").unwrap();
    let opts = RunOptions { depth: Some(2), seed: Some(3) };
    let a = emit_report(&run_tasks(&input, opts).unwrap().without_timings(), Format::Machine);
    let b = emit_report(&run_tasks(&input, opts).unwrap().without_timings(), Format::Machine);
    assert_eq!(a, b);
}

#[test]
fn cli_corpus_and_validate() {
    let out = envlab().args(["corpus", "list"]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), corpus_names().len());

    let out = envlab().args(["corpus", "show", "FIX-KRON"]).output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), corpus_entry("FIX-KRON").unwrap());

    let dir = std::env::temp_dir().join(format!("envlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("a2.json");
    std::fs::write(&good, corpus_entry("FIX-A2-ALL").unwrap()).unwrap();
    assert_eq!(envlab().arg("validate").arg(&good).status().unwrap().code(), Some(0));
    let bad = dir.join("bad.json");
    std::fs::write(&bad, edited("FIX-A2-ALL", r#""p": 101"#, r#""p": 91"#)).unwrap();
    let out = envlab().arg("validate").arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("E_BAD_INPUT"));
    assert_eq!(envlab().arg("validate").arg(dir.join("missing.json")).status().unwrap().code(), Some(2));
}

#[test]
fn cli_run_machine_report() {
    let dir = std::env::temp_dir().join(format!("envlab-run-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("a2.json");
    std::fs::write(&input, corpus_entry("FIX-A2-ALL").unwrap()).unwrap();
    let out = dir.join("report.json");
    let status = envlab()
        .arg("run")
        .arg(&input)
        .args(["--format", "machine", "--seed", "5", "--depth", "2", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let report: RunReport = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report.seed, 5);
    assert_eq!(report.tasks.len(), 4);
}
