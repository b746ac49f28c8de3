//! JSON input documents.

use std::io::Read;
use std::path::Path;

use cmorbit_core::cmgroup::{CmType, SignedPermutation};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// `{"g": g, "generators": [[±int, …]], "cm_type": [±int, …]}`; the CM type
/// defaults to `{1, …, g}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub g: usize,
    pub generators: Vec<SignedPermutation>,
    #[serde(default)]
    pub cm_type: Option<CmType>,
}

impl GroupSpec {
    pub fn cm_type(&self) -> Result<CmType, CliError> {
        match &self.cm_type {
            Some(t) if t.g() != self.g => {
                Err(cmorbit_core::Error::Dimension(format!("cm_type has {} points but g = {}", t.g(), self.g)).into())
            }
            Some(t) => Ok(t.clone()),
            None => Ok(CmType::standard(self.g)),
        }
    }
}

/// Reads and parses a JSON document; `-` means standard input.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let name = path.display().to_string();
    let text = if name == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io { path: name.clone(), message: e.to_string() })?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Io { path: name.clone(), message: e.to_string() })?
    };
    parse_json(&name, &text)
}

pub fn parse_json<T: DeserializeOwned>(source_name: &str, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Json {
        source_name: source_name.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}
