//! `key = value` configuration files. Flags on the command line win over the
//! file; the file wins over built-in defaults.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::CliError;

/// Keys a configuration file may set. `-` and `_` are interchangeable.
pub const KNOWN_KEYS: &[&str] = &[
    "threads",
    "format",
    "out-dir",
    "timestamps",
    "seed",
    "budget",
    "restarts",
    "strategy",
    "zykov",
    "mode",
    "kmin",
    "kmax",
    "grid",
    "bits",
    "cover-cells",
    "samples",
    "random-points",
    "simplex-total",
];

#[derive(Clone, Debug, Default)]
pub struct FileConfig {
    values: BTreeMap<String, (usize, String)>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let (key, value) = l
                .split_once('=')
                .ok_or_else(|| CliError::Validation(format!("config line {line}: expected `key = value`")))?;
            let key = key.trim().replace('_', "-");
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(CliError::Validation(format!(
                    "config line {line}: unknown key `{key}` (known: {})",
                    KNOWN_KEYS.join(", ")
                )));
            }
            if values.insert(key.clone(), (line, value.trim().to_string())).is_some() {
                return Err(CliError::Validation(format!("config line {line}: `{key}` set twice")));
            }
        }
        Ok(FileConfig { values })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// The flag value if given, else the file value, parsed.
    pub fn pick<T: FromStr>(&self, key: &str, flag: Option<T>) -> Result<Option<T>, CliError> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.values.get(key) {
            None => Ok(None),
            Some((line, v)) => v
                .parse()
                .map(Some)
                .map_err(|_| CliError::Validation(format!("config line {line}: bad value `{v}` for `{key}`"))),
        }
    }

    pub fn pick_or<T: FromStr>(&self, key: &str, flag: Option<T>, default: T) -> Result<T, CliError> {
        Ok(self.pick(key, flag)?.unwrap_or(default))
    }
}
