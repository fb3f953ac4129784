//! Fixtures shipped with the library.

use crate::error::{bad_input, Result};

use super::input::{parse_str, WorkbenchInput};

const CORPUS: &[(&str, &str)] = &[
    ("FIX-A2-ALL", include_str!("../../corpus/fix-a2-all.json")),
    ("FIX-A2-SPLIT", include_str!("../../corpus/fix-a2-split.json")),
    ("FIX-A2-PROJ", include_str!("../../corpus/fix-a2-proj.json")),
    ("FIX-KRON", include_str!("../../corpus/fix-kron.json")),
];

pub fn corpus_names() -> Vec<&'static str> {
    CORPUS.iter().map(|(n, _)| *n).collect()
}

/// Raw file contents of a fixture.
pub fn corpus_entry(name: &str) -> Option<&'static str> {
    CORPUS.iter().find(|(n, _)| n.eq_ignore_ascii_case(name)).map(|(_, t)| *t)
}

pub fn load_corpus(name: &str) -> Result<WorkbenchInput> {
    let text = corpus_entry(name).ok_or_else(|| bad_input(format!("unknown fixture {name:?}")))?;
    parse_str(text)
}
