//! Runs every check on every bundled fixture and prints the verdicts.
//!
//! `cargo run --example workbench_run -- FIX-KRON` restricts to one fixture.

use envlab::workbench::{corpus_names, emit_report, full_suite, load_corpus, run_tasks, Format, RunOptions};

fn main() -> envlab::Result<()> {
    let only = std::env::args().nth(1);
    for name in corpus_names() {
        if only.as_deref().is_some_and(|o| o != name) {
            continue;
        }
        let mut input = load_corpus(name)?;
        let structures: Vec<String> = input.structures.keys().cloned().collect();
        input.tasks = structures.iter().flat_map(|s| full_suite(s)).collect();
        let report = run_tasks(&input, RunOptions { depth: None, seed: Some(7) })?;
        print!("{}", emit_report(&report, Format::Human));
        println!("exit code {}\n", report.exit_code());
    }
    Ok(())
}
