use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::zoo::{GroupConfig, GroupModel};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

/// Everything needed to run one catalog experiment. Output location and
/// worker count are left out of the serialized form, so they never change
/// a report's contents.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub experiment: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group_file: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(rename = "D", skip_serializing_if = "Option::is_none")]
    pub pattern_depth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(rename = "L", skip_serializing_if = "Option::is_none")]
    pub max_len: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    /// Dimension for the generation-probability experiments.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vertices: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub elements: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_failures: Option<u64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub unchecked: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub transposed: bool,
    #[serde(default)]
    pub format: OutputFormat,
    /// Strict mode: randomized experiments must be given a seed.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub ci: bool,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[serde(skip)]
    pub threads: Option<usize>,
}

impl ExperimentConfig {
    pub fn new(experiment: &str) -> Self {
        ExperimentConfig {
            experiment: experiment.to_string(),
            ..Default::default()
        }
    }

    /// The group named by `group` or defined in `group_file`.
    pub fn model(&self) -> Result<GroupModel> {
        match (&self.group, &self.group_file) {
            (Some(_), Some(_)) => Err(Error::InvalidParameters(
                "give either --group or --group-file, not both".into(),
            )),
            (Some(tag), None) => GroupModel::from_tag(tag),
            (None, Some(path)) => GroupConfig::from_file(path)?.build(),
            (None, None) => Err(Error::InvalidParameters(format!(
                "{} needs --group or --group-file",
                self.experiment
            ))),
        }
    }

    pub(crate) fn require<T: Copy>(&self, value: Option<T>, flag: &str) -> Result<T> {
        value.ok_or_else(|| Error::InvalidParameters(format!("{} needs {flag}", self.experiment)))
    }
}
