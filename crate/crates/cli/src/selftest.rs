//! Recomputes the bundled corpus and diffs against the shipped expected reports.

use serde_json::{json, Value};

use novikov_core::{CorpusEntry, CORPUS};

use crate::commands::{run_certify, run_compute, DEFAULT_SCAN};
use crate::error::{CliError, Result};
use crate::job::{ClassSpec, JobSpec};

const EXPECTED: &[(&str, &str)] = &[
    ("free2", include_str!("../corpus/free2.json")),
    ("z2", include_str!("../corpus/z2.json")),
    ("klein", include_str!("../corpus/klein.json")),
    ("bs12", include_str!("../corpus/bs12.json")),
    ("genus2", include_str!("../corpus/genus2.json")),
    ("trefoil", include_str!("../corpus/trefoil.json")),
];

pub fn compute_job(e: &CorpusEntry) -> JobSpec {
    let mut job = JobSpec::presentation(e.presentation).with_classes(ClassSpec::Explicit {
        classes: vec![vec![e.class.to_string()]],
    });
    job.options.torsion = true;
    job
}

pub fn certify_job(e: &CorpusEntry) -> JobSpec {
    let mut job = JobSpec::presentation(e.presentation).with_classes(ClassSpec::Scan { budget: DEFAULT_SCAN });
    job.options.assert_amenable = e.amenable;
    job
}

/// Both reports of one corpus entry, as stored in the expected files.
pub fn corpus_reports(e: &CorpusEntry) -> Result<Value> {
    let compute = run_compute(&compute_job(e), false)?;
    let certify = run_certify(&certify_job(e), false)?;
    Ok(json!({ "compute": compute, "certify": certify }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub name: &'static str,
    /// `None` on a match, otherwise the first differing JSON path.
    pub mismatch: Option<String>,
}

fn first_difference(path: &str, a: &Value, b: &Value) -> Option<String> {
    match (a, b) {
        (Value::Object(x), Value::Object(y)) => {
            for k in x.keys().chain(y.keys()) {
                let sub = format!("{path}/{k}");
                match (x.get(k), y.get(k)) {
                    (Some(u), Some(v)) => {
                        if let Some(d) = first_difference(&sub, u, v) {
                            return Some(d);
                        }
                    }
                    _ => return Some(sub),
                }
            }
            None
        }
        (Value::Array(x), Value::Array(y)) if x.len() == y.len() => x
            .iter()
            .zip(y)
            .enumerate()
            .find_map(|(i, (u, v))| first_difference(&format!("{path}/{i}"), u, v)),
        _ => (a != b).then(|| {
            if path.is_empty() {
                "/".to_string()
            } else {
                path.to_string()
            }
        }),
    }
}

pub fn selftest() -> Result<Vec<Outcome>> {
    EXPECTED
        .iter()
        .map(|&(name, text)| {
            let entry = CORPUS
                .iter()
                .find(|e| e.name == name)
                .expect("expected file names a corpus entry");
            let expected: Value = serde_json::from_str(text)?;
            let actual = corpus_reports(entry)?;
            Ok(Outcome {
                name,
                mismatch: first_difference("", &expected, &actual),
            })
        })
        .collect()
}

/// Writes fresh expected files into `dir`.
pub fn bless(dir: &str) -> Result<()> {
    for e in CORPUS {
        let path = format!("{dir}/{}.json", e.name);
        let text = crate::report::to_json(&corpus_reports(e)?);
        std::fs::write(&path, text).map_err(|err| CliError::io(path, err))?;
    }
    Ok(())
}
