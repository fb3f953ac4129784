//! Declarative input files, the task runner, reports and the bundled corpus.

pub mod corpus;
pub mod dual;
pub mod input;
pub mod report;
pub mod run;

pub use corpus::{corpus_entry, corpus_names, load_corpus};
pub use dual::dualize_input;
pub use input::{parse_input, parse_str, resolve, to_json, Resolved, WorkbenchInput};
pub use report::{emit_report, Format, RunReport, TaskOutcome};
pub use run::{full_suite, input_digest, run_tasks, RunOptions};
