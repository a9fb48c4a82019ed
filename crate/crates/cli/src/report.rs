//! Report envelope: a manifest block (timestamps and run metadata, allowed
//! to vary between runs) around a payload block that must be byte-identical
//! for identical arguments and seed.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::Value;

use crate::CliError;

#[derive(Debug, Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    /// Fully resolved options after merging flags, config file and defaults.
    pub args: BTreeMap<String, String>,
    pub seed: Option<u64>,
    pub started_unix_ms: u128,
    pub finished_unix_ms: u128,
    pub elapsed_ms: u128,
    pub outcome: String,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub manifest: Manifest,
    pub payload: Value,
}

pub fn unix_ms() -> u128 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis())
        .unwrap_or(0)
}

impl Report {
    /// Canonical pretty JSON: everything passes through `Value`, whose maps
    /// are key-sorted, so repeat runs serialize identically byte for byte.
    pub fn render(&self) -> String {
        let value = serde_json::to_value(self).expect("report serialization");
        let mut text = serde_json::to_string_pretty(&value).expect("report serialization");
        text.push('\n');
        text
    }

    pub fn write_to(&self, path: &Path) -> Result<(), CliError> {
        fs::write(path, self.render())
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
    }
}
