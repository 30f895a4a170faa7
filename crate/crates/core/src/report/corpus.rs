use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{load_germ, run_report, ReportOptions};
use crate::error::{ErrorClass, Result};

/// An expected value that differs from the report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub field: String,
    pub expected: Value,
    pub actual: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct CorpusEntry {
    pub name: String,
    pub pass: bool,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub failed_identities: Vec<String>,
    pub mismatches: Vec<Mismatch>,
    #[serde(rename = "dimM", skip_serializing_if = "Option::is_none")]
    pub dim_m: Option<u64>,
    #[serde(rename = "dimK", skip_serializing_if = "Option::is_none")]
    pub dim_k: Option<u64>,
    #[serde(rename = "codimAe", skip_serializing_if = "Option::is_none")]
    pub codim_ae: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub entries: Vec<CorpusEntry>,
    pub passed: usize,
    pub failed: usize,
}

impl CorpusSummary {
    pub fn exit_code(&self) -> i32 {
        self.entries
            .iter()
            .find(|e| !e.pass)
            .map(|e| {
                if e.exit_code == 0 {
                    ErrorClass::IdentityFailure.exit_code()
                } else {
                    e.exit_code
                }
            })
            .unwrap_or(0)
    }

    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{:<28} {:>5} {:>5} {:>7}  status", "germ", "dimM", "dimK", "codimAe");
        let show = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_else(|| "-".into());
        for e in &self.entries {
            let status = if e.pass {
                "pass".to_string()
            } else if let Some(err) = &e.error {
                format!("FAIL ({err})")
            } else {
                let mut why: Vec<String> = e.failed_identities.clone();
                why.extend(
                    e.mismatches
                        .iter()
                        .map(|m| format!("{}: expected {}, got {}", m.field, m.expected, m.actual)),
                );
                format!("FAIL ({})", why.join("; "))
            };
            let _ = writeln!(
                s,
                "{:<28} {:>5} {:>5} {:>7}  {status}",
                e.name,
                show(e.dim_m),
                show(e.dim_k),
                show(e.codim_ae)
            );
        }
        let _ = writeln!(s, "{} passed, {} failed", self.passed, self.failed);
        s
    }
}

/// Fields of `expected` that are absent from or different in `actual`;
/// objects are compared recursively, everything else exactly.
fn compare(path: &str, expected: &Value, actual: Option<&Value>, out: &mut Vec<Mismatch>) {
    match (expected, actual) {
        (Value::Object(e), Some(Value::Object(a))) => {
            for (k, v) in e {
                let p = if path.is_empty() {
                    k.clone()
                } else {
                    format!("{path}.{k}")
                };
                compare(&p, v, a.get(k), out);
            }
        }
        (e, a) if Some(e) == a => {}
        (e, a) => out.push(Mismatch {
            field: path.into(),
            expected: e.clone(),
            actual: a.cloned().unwrap_or(Value::Null),
        }),
    }
}

fn sidecar(path: &Path) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
    path.with_file_name(format!("{stem}.expected.json"))
}

fn run_entry(path: &Path, opts: &ReportOptions) -> CorpusEntry {
    let name = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or_default()
        .to_string();
    let expected: Option<Value> = std::fs::read_to_string(sidecar(path))
        .ok()
        .map(|t| serde_json::from_str(&t))
        .transpose()
        .unwrap_or_else(|e| Some(Value::String(format!("unreadable sidecar: {e}"))));
    let mut entry = CorpusEntry {
        name,
        pass: false,
        exit_code: 0,
        error: None,
        failed_identities: Vec::new(),
        mismatches: Vec::new(),
        dim_m: None,
        dim_k: None,
        codim_ae: None,
    };
    let mut actual = match load_germ(path).and_then(|input| run_report(&input, opts)) {
        Ok(report) => {
            entry.exit_code = report.exit_code();
            entry.failed_identities = report
                .identities
                .iter()
                .filter(|i| !i.pass)
                .map(|i| i.name.clone())
                .collect();
            entry.dim_m = Some(report.dim_m);
            entry.dim_k = Some(report.dim_k);
            entry.codim_ae = Some(report.codim_ae_direct);
            serde_json::to_value(&report).expect("report serializes")
        }
        Err(e) => {
            entry.exit_code = e.exit_code();
            entry.error = Some(e.to_string());
            Value::Object(Default::default())
        }
    };
    actual["exit-code"] = Value::from(entry.exit_code);
    let expected_code = match &expected {
        Some(Value::Object(e)) => e.get("exit-code").and_then(Value::as_i64).unwrap_or(0),
        _ => 0,
    };
    match &expected {
        Some(e @ Value::Object(_)) => compare("", e, Some(&actual), &mut entry.mismatches),
        Some(other) => entry.mismatches.push(Mismatch {
            field: "<sidecar>".into(),
            expected: other.clone(),
            actual: Value::Null,
        }),
        None => {}
    }
    entry.pass = entry.mismatches.is_empty() && i64::from(entry.exit_code) == expected_code;
    entry
}

/// Runs every `*.json` input in `dir` (sidecars excluded) on up to `jobs`
/// threads and compares with the `<name>.expected.json` sidecars.
pub fn run_corpus(dir: &Path, opts: &ReportOptions, jobs: usize) -> Result<CorpusSummary> {
    let mut inputs: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            let name = p.file_name().and_then(|s| s.to_str()).unwrap_or_default();
            name.ends_with(".json") && !name.ends_with(".expected.json")
        })
        .collect();
    inputs.sort();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| crate::error::Error::Internal(e.to_string()))?;
    let entries: Vec<CorpusEntry> = pool.install(|| inputs.par_iter().map(|p| run_entry(p, opts)).collect());
    let passed = entries.iter().filter(|e| e.pass).count();
    Ok(CorpusSummary {
        failed: entries.len() - passed,
        passed,
        entries,
    })
}
