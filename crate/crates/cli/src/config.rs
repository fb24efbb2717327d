//! Minimal `key = value` config file, mirroring the command-line flags.
//! Flags always win; the file only fills in options that were not given.

use std::collections::BTreeMap;
use std::path::Path;

pub struct Config {
    entries: BTreeMap<String, String>,
}

impl Config {
    pub fn empty() -> Self {
        Config {
            entries: BTreeMap::new(),
        }
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {}: expected key = value", lineno + 1))?;
            let value = value.trim().trim_matches('"').to_string();
            entries.insert(key.trim().to_string(), value);
        }
        Ok(Config { entries })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    /// Parse a config value with the same parser the flag uses.
    pub fn parse<T, F>(&self, key: &str, parse: F) -> Result<Option<T>, String>
    where
        F: Fn(&str) -> Result<T, String>,
    {
        match self.get(key) {
            None => Ok(None),
            Some(raw) => parse(raw)
                .map(Some)
                .map_err(|e| format!("config key `{key}`: {e}")),
        }
    }
}

pub fn parse_bool(s: &str) -> Result<bool, String> {
    match s {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        other => Err(format!("expected boolean, got `{other}`")),
    }
}
