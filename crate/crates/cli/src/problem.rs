//! The JSON problem file shared by every command.

use std::path::Path;

use serde::{Deserialize, Serialize};
use srg_core::classes::{enlarge_c, Enlargement, OperatorClassSpec};
use srg_core::search::SearchConfig;
use srg_core::{DysParams, SCHEMA_VERSION};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassTriple {
    #[serde(rename = "A")]
    pub a: OperatorClassSpec,
    #[serde(rename = "B")]
    pub b: OperatorClassSpec,
    #[serde(rename = "C")]
    pub c: OperatorClassSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpecFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub classes: ClassTriple,
    pub params: DysParams,
    #[serde(default)]
    pub search: SearchConfig,
    /// When present, C is replaced by the enlarged class C′ for search, verification and plots.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enlargement: Option<Enlargement>,
}

impl ProblemSpecFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let spec: ProblemSpecFile = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        if let Some(v) = spec.schema_version {
            if v != SCHEMA_VERSION {
                return Err(CliError::Parse(format!("unsupported schema_version {v}; expected {SCHEMA_VERSION}")));
            }
        }
        spec.params.validate().map_err(|e| CliError::Parse(e.to_string()))?;
        spec.search.validate().map_err(|e| CliError::Parse(e.to_string()))?;
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
        Self::parse(&text)
    }

    /// C, or C′ if an enlargement mode is set.
    pub fn effective_c(&self) -> Result<OperatorClassSpec, CliError> {
        match self.enlargement {
            Some(mode) => Ok(enlarge_c(&self.classes.c, &self.params, mode)?),
            None => Ok(self.classes.c.clone()),
        }
    }
}
