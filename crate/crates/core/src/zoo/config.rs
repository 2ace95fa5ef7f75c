//! JSON group definitions.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{GroupModel, PatternSpec, WreathRecursionSpec};
use crate::error::{Error, Result};
use crate::tree::TruncatedAutomorphism;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub perm: Vec<usize>,
    pub sections: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupConfig {
    pub kind: String,
    pub d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(default, rename = "D", skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<BTreeMap<String, GeneratorConfig>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub patterns: Option<Vec<String>>,
}

impl GroupConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("group definition: {e}")))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn build(&self) -> Result<GroupModel> {
        let d = self.d;
        let prime = || -> Result<usize> {
            let p = self.p.unwrap_or(d);
            if p != d {
                return Err(Error::InvalidParameters(format!(
                    "p = {p} must equal d = {d}"
                )));
            }
            Ok(p)
        };
        let model = match self.kind.as_str() {
            "full-wreath" => GroupModel::full_wreath(d)?,
            "cyclic-wreath" => GroupModel::cyclic_wreath(prime()?)?,
            "abelian-level" => GroupModel::abelian_level(prime()?)?,
            "affine" => GroupModel::affine(d)?,
            "wreath-recursion" => {
                let gens = self.generators.as_ref().ok_or_else(|| {
                    Error::InvalidParameters("wreath-recursion needs generators".into())
                })?;
                let defs: Vec<(&str, Vec<usize>, Vec<&str>)> = gens
                    .iter()
                    .map(|(name, g)| {
                        (
                            name.as_str(),
                            g.perm.clone(),
                            g.sections.iter().map(String::as_str).collect(),
                        )
                    })
                    .collect();
                let spec = WreathRecursionSpec::new(d, &defs)?;
                GroupModel::wreath_recursion(
                    self.name.as_deref().unwrap_or("wreath-recursion"),
                    spec,
                    self.depth,
                )
            }
            "pattern" => {
                let depth = self
                    .depth
                    .ok_or_else(|| Error::InvalidParameters("pattern needs D".into()))?;
                let strings = self
                    .patterns
                    .as_ref()
                    .ok_or_else(|| Error::InvalidParameters("pattern needs patterns".into()))?;
                let allowed = strings
                    .iter()
                    .map(|s| s.parse::<TruncatedAutomorphism>())
                    .collect::<Result<Vec<_>>>()?;
                GroupModel::pattern(
                    self.name.as_deref().unwrap_or("pattern"),
                    PatternSpec::new(d, depth, allowed)?,
                )
            }
            other => return Err(Error::UnknownGroup(other.to_string())),
        };
        if model.arity() != d {
            return Err(Error::ArityMismatch(d, model.arity()));
        }
        Ok(model)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grigorchuk_from_json() {
        let text = r#"{
            "kind": "wreath-recursion", "d": 2, "name": "grig",
            "generators": {
                "a": {"perm": [2, 1], "sections": ["e", "e"]},
                "b": {"perm": [1, 2], "sections": ["a", "c"]},
                "c": {"perm": [1, 2], "sections": ["a", "d"]},
                "d": {"perm": [1, 2], "sections": ["e", "b"]}
            }
        }"#;
        let g = GroupConfig::from_json(text).unwrap().build().unwrap();
        assert_eq!(g.id(), "grig");
        assert_eq!(g.enumerate(3).unwrap().len(), 128);
    }

    #[test]
    fn pattern_from_json() {
        let text = r#"{"kind": "pattern", "d": 2, "D": 1, "patterns": ["12()", "21()"]}"#;
        let g = GroupConfig::from_json(text).unwrap().build().unwrap();
        assert_eq!(g.enumerate(3).unwrap().len(), 128);
    }

    #[test]
    fn bad_configs() {
        assert!(GroupConfig::from_json(r#"{"kind": "affine"}"#).is_err());
        assert!(GroupConfig::from_json(r#"{"kind": "affine", "d": 3, "extra": 1}"#).is_err());
        let c = GroupConfig::from_json(r#"{"kind": "nosuch", "d": 3}"#).unwrap();
        assert!(matches!(c.build(), Err(Error::UnknownGroup(_))));
        let c = GroupConfig::from_json(r#"{"kind": "abelian-level", "d": 2, "p": 3}"#).unwrap();
        assert!(c.build().is_err());
        let c =
            GroupConfig::from_json(r#"{"kind": "pattern", "d": 2, "D": 1, "patterns": ["21()"]}"#)
                .unwrap();
        assert!(c.build().is_err());
    }
}
