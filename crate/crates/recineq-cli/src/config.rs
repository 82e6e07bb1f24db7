//! Scenario configuration: a TOML file with one section per scenario.
//! Every key a scenario does not understand is rejected.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use recineq::{parse_ratio, Exact, GSpec};

/// The parsed file: section name to key/value table.
#[derive(Default)]
pub struct Config {
    sections: BTreeMap<String, toml::Table>,
}

impl Config {
    pub fn load(path: Option<&Path>) -> Result<Config> {
        let Some(path) = path else {
            return Ok(Config::default());
        };
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let table: toml::Table = text
            .parse()
            .with_context(|| format!("parsing config {}", path.display()))?;
        let mut sections = BTreeMap::new();
        for (name, value) in table {
            let toml::Value::Table(section) = value else {
                bail!("top-level key {name:?} is not a section");
            };
            sections.insert(name, section);
        }
        Ok(Config { sections })
    }

    pub fn section(&self, name: &str) -> Params {
        Params {
            section: name.to_string(),
            map: self.sections.get(name).cloned().unwrap_or_default(),
        }
    }
}

/// One scenario's parameters. Getters consume keys; [`Params::finish`]
/// rejects anything left over.
pub struct Params {
    section: String,
    map: toml::Table,
}

impl Params {
    pub fn empty(section: &str) -> Params {
        Params {
            section: section.to_string(),
            map: toml::Table::new(),
        }
    }

    fn take(&mut self, key: &str) -> Option<toml::Value> {
        self.map.remove(key)
    }

    fn bad(&self, key: &str, expected: &str) -> anyhow::Error {
        anyhow!("[{}] key {key:?}: expected {expected}", self.section)
    }

    pub fn u64(&mut self, key: &str, default: u64) -> Result<u64> {
        match self.take(key) {
            None => Ok(default),
            Some(toml::Value::Integer(i)) if i >= 0 => Ok(i as u64),
            Some(_) => Err(self.bad(key, "a nonnegative integer")),
        }
    }

    pub fn f64(&mut self, key: &str, default: f64) -> Result<f64> {
        match self.take(key) {
            None => Ok(default),
            Some(toml::Value::Float(f)) => Ok(f),
            Some(toml::Value::Integer(i)) => Ok(i as f64),
            Some(_) => Err(self.bad(key, "a number")),
        }
    }

    pub fn bool(&mut self, key: &str, default: bool) -> Result<bool> {
        match self.take(key) {
            None => Ok(default),
            Some(toml::Value::Boolean(b)) => Ok(b),
            Some(_) => Err(self.bad(key, "a boolean")),
        }
    }

    pub fn ratio(&mut self, key: &str, default: &str) -> Result<Exact> {
        let s = match self.take(key) {
            None => default.to_string(),
            Some(toml::Value::String(s)) => s,
            Some(toml::Value::Integer(i)) => i.to_string(),
            Some(_) => return Err(self.bad(key, "a rational as a string, e.g. \"1/10\"")),
        };
        parse_ratio(&s).map_err(|e| anyhow!("[{}] key {key:?}: {e}", self.section))
    }

    pub fn ratio_list(&mut self, key: &str, default: &[&str]) -> Result<Vec<Exact>> {
        let raw: Vec<String> = match self.take(key) {
            None => default.iter().map(|s| s.to_string()).collect(),
            Some(toml::Value::Array(items)) => items
                .into_iter()
                .map(|v| match v {
                    toml::Value::String(s) => Ok(s),
                    toml::Value::Integer(i) => Ok(i.to_string()),
                    _ => Err(self.bad(key, "an array of rational strings")),
                })
                .collect::<Result<_>>()?,
            Some(_) => return Err(self.bad(key, "an array of rational strings")),
        };
        raw.iter()
            .map(|s| parse_ratio(s).map_err(|e| anyhow!("[{}] key {key:?}: {e}", self.section)))
            .collect()
    }

    pub fn g_list(&mut self, key: &str, default: &[&str]) -> Result<Vec<GSpec>> {
        let raw: Vec<String> = match self.take(key) {
            None => default.iter().map(|s| s.to_string()).collect(),
            Some(toml::Value::Array(items)) => items
                .into_iter()
                .map(|v| match v {
                    toml::Value::String(s) => Ok(s),
                    _ => Err(self.bad(key, "an array of g descriptors")),
                })
                .collect::<Result<_>>()?,
            Some(_) => return Err(self.bad(key, "an array of g descriptors")),
        };
        raw.iter()
            .map(|s| GSpec::parse(s).map_err(|e| anyhow!("[{}] key {key:?}: {e}", self.section)))
            .collect()
    }

    /// Rejects unknown keys.
    pub fn finish(self) -> Result<()> {
        if let Some(key) = self.map.keys().next() {
            bail!("[{}] unknown key {key:?}", self.section);
        }
        Ok(())
    }
}
