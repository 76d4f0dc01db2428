#![allow(dead_code)]

pub mod oracle;

use std::path::PathBuf;

use fast_core::ast::Formula;
use fast_core::parser::parse_fast_file;

pub fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(rel)
}

pub fn golden(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(rel)
}

pub fn read_fixture(rel: &str) -> String {
    std::fs::read_to_string(fixture(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

pub fn formula_fixture(rel: &str) -> Formula {
    parse_fast_file(&read_fixture(rel)).unwrap_or_else(|e| panic!("{rel}: {e:?}"))
}

/// All corpus files, sorted by name.
pub fn corpus() -> Vec<(String, Formula)> {
    let mut names: Vec<String> = std::fs::read_dir(fixture("corpus"))
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(".fast"))
        .collect();
    names.sort();
    names.into_iter().map(|n| {
        let phi = formula_fixture(&format!("corpus/{n}"));
        (n, phi)
    }).collect()
}

/// Compares `actual` with a golden file, rewriting it when `FAST_BLESS` is set.
pub fn check_golden(rel: &str, actual: &str) {
    let path = golden(rel);
    if std::env::var_os("FAST_BLESS").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "golden mismatch in {rel}");
}

/// Like [`check_golden`] but reports a mismatch instead of panicking.
pub fn check_golden_quiet(rel: &str, actual: &str) -> Result<(), String> {
    let path = golden(rel);
    let expected = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if actual == expected {
        Ok(())
    } else {
        Err(format!("{rel} differs from the computed table"))
    }
}

pub fn model_fixture(rel: &str) -> fast_core::semantics::Model {
    fast_core::semantics::parse_model_spec(&read_fixture(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}
