//! Flat key = value run configuration. Every key mirrors the long flag
//! of the same name; command-line flags override config entries.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::CliError;

const KNOWN_KEYS: &[&str] = &[
    "parity1",
    "parity2",
    "alpha0",
    "beta0",
    "mu",
    "m",
    "z",
    "z-min",
    "z-max",
    "steps",
    "objective",
    "threshold",
];

/// Parsed configuration entries, keyed by flag name.
#[derive(Debug, Default, Clone)]
pub struct Config {
    entries: BTreeMap<String, String>,
}

impl Config {
    /// Loads and validates a config file. Unreadable files are runtime
    /// errors; malformed lines or unknown keys are usage errors.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Runtime(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Usage(msg) => CliError::Usage(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut entries = BTreeMap::new();
        for (index, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("line {}: expected 'key = value'", index + 1))
            })?;
            let key = key.trim();
            let value = value.trim();
            if !KNOWN_KEYS.contains(&key) {
                return Err(CliError::Usage(format!(
                    "line {}: unknown config key '{key}'",
                    index + 1
                )));
            }
            if entries.insert(key.to_string(), value.to_string()).is_some() {
                return Err(CliError::Usage(format!(
                    "line {}: duplicate config key '{key}'",
                    index + 1
                )));
            }
        }
        Ok(Self { entries })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    /// Fetches and parses an entry, turning parse failures into usage
    /// errors that name the key.
    pub fn get_parsed<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        match self.get(key) {
            None => Ok(None),
            Some(raw) => raw.parse().map(Some).map_err(|_| {
                CliError::Usage(format!("config key '{key}': invalid value '{raw}'"))
            }),
        }
    }
}
