use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use repnum::factor::DEFAULT_BUDGET;
use repnum::repetition::DEFAULT_DIGIT_GUARD;
use serde::Deserialize;

/// Smallest digit guard accepted on the command line.
pub const MIN_DIGIT_GUARD: usize = 64;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Output {
    #[default]
    Text,
    Records,
}

/// Settings read from `--config`. Every key is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub cache_path: Option<PathBuf>,
    pub seed: Option<u64>,
    pub digit_guard: Option<usize>,
    pub budget: Option<u64>,
    pub output: Option<Output>,
    pub group: Option<bool>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("config {}: {e}", path.display()))
    }
}

/// Effective settings: command line, then environment, then config file, then defaults.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliConfig {
    pub cache_path: Option<PathBuf>,
    pub seed: u64,
    pub digit_guard: usize,
    pub budget: u64,
    pub output: Output,
    pub group: bool,
}

/// Values given on the command line (or, for the cache, the environment).
#[derive(Debug, Default)]
pub struct Overrides {
    pub cache_path: Option<PathBuf>,
    pub seed: Option<u64>,
    pub digit_guard: Option<usize>,
    pub budget: Option<u64>,
    pub output: Option<Output>,
    pub group: bool,
}

impl CliConfig {
    pub fn resolve(over: Overrides, file: FileConfig) -> Result<Self, String> {
        let digit_guard = over
            .digit_guard
            .or(file.digit_guard)
            .unwrap_or(DEFAULT_DIGIT_GUARD);
        if digit_guard < MIN_DIGIT_GUARD {
            return Err(format!(
                "digit guard must be at least {MIN_DIGIT_GUARD}, got {digit_guard}"
            ));
        }
        let budget = over.budget.or(file.budget).unwrap_or(DEFAULT_BUDGET);
        if budget == 0 {
            return Err("budget must be positive".into());
        }
        Ok(CliConfig {
            cache_path: over.cache_path.or(file.cache_path),
            seed: over.seed.or(file.seed).unwrap_or(0),
            digit_guard,
            budget,
            output: over.output.or(file.output).unwrap_or_default(),
            group: over.group || file.group.unwrap_or(false),
        })
    }
}
