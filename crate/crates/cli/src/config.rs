//! Flat key=value configuration files. Precedence is CLI flag > file entry >
//! built-in default; every consumed key is removed so leftovers can be
//! reported as unknown.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::CliError;

#[derive(Debug, Default)]
pub struct FileConfig {
    entries: BTreeMap<String, String>,
}

impl FileConfig {
    /// Loads `path` if given; a missing flag means an empty config.
    /// Lines are `key = value`, blank, or `#` comments; keys are
    /// case-insensitive and may not repeat.
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Usage(format!(
                    "config line {}: expected key=value, got '{line}'",
                    lineno + 1
                )));
            };
            let key = key.trim().to_ascii_lowercase();
            if entries.insert(key.clone(), value.trim().to_string()).is_some() {
                return Err(CliError::Usage(format!(
                    "config line {}: duplicate key '{key}'",
                    lineno + 1
                )));
            }
        }
        Ok(FileConfig { entries })
    }

    /// Removes and parses `key`; `None` when the file does not set it.
    pub fn take<T: FromStr>(&mut self, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: Display,
    {
        match self.entries.remove(key) {
            None => Ok(None),
            Some(text) => text.parse().map(Some).map_err(|e| {
                CliError::Usage(format!("config key '{key}': cannot parse '{text}': {e}"))
            }),
        }
    }

    /// Errors on any key no resolver asked for, so typos never pass silently.
    pub fn finish(self) -> Result<(), CliError> {
        if let Some(key) = self.entries.keys().next() {
            return Err(CliError::Usage(format!("unknown config key '{key}'")));
        }
        Ok(())
    }
}

/// Three-way merge for one option; records the resolved value in `echo`.
/// The file entry is consumed (and must parse) even when the flag wins.
pub fn resolve<T: FromStr + Display + Clone>(
    echo: &mut BTreeMap<String, String>,
    cfg: &mut FileConfig,
    key: &str,
    flag: Option<T>,
    default: T,
) -> Result<T, CliError>
where
    T::Err: Display,
{
    let file = cfg.take(key)?;
    let value = flag.or(file).unwrap_or(default);
    echo.insert(key.to_string(), value.to_string());
    Ok(value)
}

/// Like `resolve` but with no default: the option may stay unset.
pub fn resolve_optional<T: FromStr + Display>(
    echo: &mut BTreeMap<String, String>,
    cfg: &mut FileConfig,
    key: &str,
    flag: Option<T>,
) -> Result<Option<T>, CliError>
where
    T::Err: Display,
{
    let value = flag.or(cfg.take(key)?);
    if let Some(v) = &value {
        echo.insert(key.to_string(), v.to_string());
    }
    Ok(value)
}
