//! Experiment results: a JSON summary plus a CSV of per-sample records.
//!
//! Output bytes are a pure function of the result value: the config echo is
//! key sorted, summary maps are key sorted (serde_json's default map), and
//! floats go through the standard shortest formatting.

use crate::AppError;
use serde::Serialize;
use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "SKIPPED")]
    Skipped,
}

impl Verdict {
    pub fn exit_code(self) -> u8 {
        match self {
            Verdict::Pass | Verdict::Skipped => 0,
            Verdict::Fail => 1,
        }
    }

    pub fn from_bool(pass: bool) -> Self {
        if pass {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentResult {
    pub experiment: String,
    pub verdict: Verdict,
    /// Human readable statement of the pass criterion, with the thresholds
    /// the verdict used.
    pub criterion: String,
    pub seed: u64,
    /// Echo of the raw config, key sorted.
    pub config: BTreeMap<String, String>,
    /// Experiment specific aggregate statistics (key sorted map).
    pub summary: serde_json::Value,
    /// CSV header for the records file.
    #[serde(skip)]
    pub records_header: String,
    /// CSV rows, one per record.
    #[serde(skip)]
    pub records: Vec<String>,
}

impl ExperimentResult {
    pub fn summary_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("result serializes");
        s.push('\n');
        s
    }

    pub fn records_csv(&self) -> String {
        let mut out = String::with_capacity(
            self.records_header.len() + self.records.iter().map(|r| r.len() + 1).sum::<usize>(),
        );
        out.push_str(&self.records_header);
        out.push('\n');
        for row in &self.records {
            out.push_str(row);
            out.push('\n');
        }
        out
    }

    /// Writes `{prefix}_summary.json` and `{prefix}_records.csv`.
    pub fn write_files(&self, prefix: &str) -> Result<(), AppError> {
        let prefix_path = Path::new(prefix);
        if let Some(dir) = prefix_path.parent() {
            if !dir.as_os_str().is_empty() {
                std::fs::create_dir_all(dir)
                    .map_err(|e| AppError::runtime(format!("creating {}: {e}", dir.display())))?;
            }
        }
        let write = |suffix: &str, bytes: &str| -> Result<(), AppError> {
            let path = format!("{prefix}_{suffix}");
            let mut f = std::fs::File::create(&path)
                .map_err(|e| AppError::runtime(format!("creating {path}: {e}")))?;
            f.write_all(bytes.as_bytes())
                .map_err(|e| AppError::runtime(format!("writing {path}: {e}")))
        };
        write("summary.json", &self.summary_json())?;
        write("records.csv", &self.records_csv())
    }
}

/// Builds the sorted summary map from string keyed JSON values.
pub fn summary_map(entries: Vec<(&str, serde_json::Value)>) -> serde_json::Value {
    let map: serde_json::Map<String, serde_json::Value> =
        entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    serde_json::Value::Object(map)
}
