use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};

use super::config::{ExperimentConfig, OutputFormat};
use crate::error::{Error, Result};
use crate::haar::stats::Interval;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERDICT: i32 = 2;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub experiment: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    /// Resolved parameters, defaults included.
    pub params: Map<String, Value>,
    pub seed: u64,
    /// Set when no seed was given and the default was used.
    pub seed_defaulted: bool,
    pub streams: Value,
    pub values: Map<String, Value>,
    pub intervals: BTreeMap<String, Interval>,
    pub verdicts: BTreeMap<String, bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub words: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixed_curve: Option<Value>,
    pub config: ExperimentConfig,
    pub version: String,
    pub rng_test_vector_hash: String,
    pub runtime_ms: u64,
    #[serde(skip)]
    pub csv: Option<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.verdicts.values().all(|&v| v)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            EXIT_OK
        } else {
            EXIT_VERDICT
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// The JSON form with `runtime_ms` zeroed, for reproducibility comparisons.
    pub fn to_json_without_runtime(&self) -> String {
        Report {
            runtime_ms: 0,
            ..self.clone()
        }
        .to_json()
    }

    /// The report in the configured format.
    pub fn render(&self) -> Result<String> {
        match self.config.format {
            OutputFormat::Json => Ok(self.to_json()),
            OutputFormat::Csv => self.csv.clone().ok_or_else(|| {
                Error::InvalidParameters(format!("{} has no CSV form", self.experiment))
            }),
        }
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.render()?)?;
        Ok(())
    }
}
