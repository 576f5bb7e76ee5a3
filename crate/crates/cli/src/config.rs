//! Flat `key = value` configuration files.
//!
//! One assignment per line; `#` starts a comment; blank lines are ignored.
//! Lists are comma separated. Unknown and repeated keys are errors.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use lpvv_core::harness::{InitialData, SweepConfig};

use crate::error::CliError;

/// Keys shared by every experiment.
pub const SWEEP_KEYS: &[&str] = &[
    "n_list",
    "T",
    "dt",
    "alpha",
    "grid_N",
    "seed",
    "slope",
    "cutoff",
    "sample_times",
    "initial",
];

pub const REQUIRED_SWEEP_KEYS: &[&str] = &["n_list", "T"];

/// Parsed assignments, in key order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RawConfig {
    entries: BTreeMap<String, String>,
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut entries = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!("line {}: expected key=value, got '{line}'", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            if key.is_empty() {
                return Err(CliError::Config(format!("line {}: empty key", lineno + 1)));
            }
            if entries.insert(key.to_string(), value.to_string()).is_some() {
                return Err(CliError::Config(format!("line {}: key '{key}' given twice", lineno + 1)));
            }
        }
        Ok(RawConfig { entries })
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text)
    }

    /// Apply a `key=value` override, replacing any file value.
    pub fn set(&mut self, assignment: &str) -> Result<(), CliError> {
        let (key, value) = assignment
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--set expects key=value, got '{assignment}'")))?;
        let key = key.trim();
        if key.is_empty() {
            return Err(CliError::Usage(format!("--set expects key=value, got '{assignment}'")));
        }
        self.entries.insert(key.to_string(), value.trim().to_string());
        Ok(())
    }

    pub fn insert(&mut self, key: &str, value: String) {
        self.entries.insert(key.to_string(), value);
    }

    pub fn contains(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    /// Rejects keys outside `allowed` and reports every missing `required` key at once.
    pub fn check_keys(&self, allowed: &[&str], required: &[&str]) -> Result<(), CliError> {
        if let Some(k) = self.entries.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(CliError::Config(format!(
                "unknown key '{k}'; allowed keys: {}",
                allowed.join(", ")
            )));
        }
        let missing: Vec<&str> = required.iter().copied().filter(|k| !self.contains(k)).collect();
        if !missing.is_empty() {
            return Err(CliError::Config(format!(
                "missing required key(s): {}",
                missing.join(", ")
            )));
        }
        Ok(())
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: std::fmt::Display,
    {
        self.entries
            .get(key)
            .map(|v| {
                v.parse::<T>()
                    .map_err(|e| CliError::Config(format!("key '{key}': cannot parse '{v}': {e}")))
            })
            .transpose()
    }

    pub fn get_list<T: FromStr>(&self, key: &str) -> Result<Option<Vec<T>>, CliError>
    where
        T::Err: std::fmt::Display,
    {
        self.entries
            .get(key)
            .map(|v| {
                v.split(',')
                    .map(|item| {
                        item.trim().parse::<T>().map_err(|e| {
                            CliError::Config(format!("key '{key}': cannot parse list item '{}': {e}", item.trim()))
                        })
                    })
                    .collect()
            })
            .transpose()
    }
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

/// Resolve a sweep configuration; `extra` lists subcommand-specific keys that may also appear.
pub fn sweep_config(raw: &RawConfig, extra: &[&str]) -> Result<SweepConfig, CliError> {
    let allowed: Vec<&str> = SWEEP_KEYS.iter().chain(extra).copied().collect();
    raw.check_keys(&allowed, REQUIRED_SWEEP_KEYS)?;
    let n_list: Vec<u32> = raw.get_list("n_list")?.expect("checked above");
    let t_final: f64 = raw.get("T")?.expect("checked above");
    let mut c = SweepConfig::new(n_list, t_final);
    if let Some(n) = raw.get("grid_N")? {
        c.grid_n = n;
        c.cutoff = n / 4;
    }
    if let Some(v) = raw.get("dt")? {
        c.dt = v;
    }
    if let Some(v) = raw.get("alpha")? {
        c.alpha = v;
    }
    if let Some(v) = raw.get("seed")? {
        c.seed = v;
    }
    if let Some(v) = raw.get("slope")? {
        c.slope = v;
    }
    if let Some(v) = raw.get("cutoff")? {
        c.cutoff = v;
    }
    if let Some(v) = raw.get_list("sample_times")? {
        c.sample_times = v;
    }
    if let Some(v) = raw.get::<InitialData>("initial")? {
        c.initial = v;
    }
    c.validate()?;
    Ok(c)
}

/// `load_config(path)`: read a file and resolve it as a sweep configuration.
pub fn load_config(path: &Path) -> Result<SweepConfig, CliError> {
    sweep_config(&RawConfig::read(path)?, &[])
}

/// The resolved configuration in the input format, every key explicit.
pub fn echo(c: &SweepConfig) -> String {
    format!(
        "n_list = {}\nT = {:e}\ndt = {:e}\nalpha = {:e}\ngrid_N = {}\nseed = {}\nslope = {:e}\ncutoff = {}\nsample_times = {}\ninitial = {}\n",
        join(&c.n_list),
        c.t_final,
        c.dt,
        c.alpha,
        c.grid_n,
        c.seed,
        c.slope,
        c.cutoff,
        c.sample_times.iter().map(|t| format!("{t:e}")).collect::<Vec<_>>().join(","),
        c.initial,
    )
}
