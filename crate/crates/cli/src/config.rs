//! Settings resolution: flags, then the config file, then the environment,
//! then built-in defaults.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::args::GlobalArgs;
use crate::error::{CliError, CliResult};

/// Environment variable naming the series cache directory.
pub const CACHE_DIR_ENV: &str = "HECKE_CACHE_DIR";

/// Contents of a `--config` TOML file. Every key is optional.
#[derive(Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub cache_dir: Option<PathBuf>,
    /// `false` disables the on-disk cache.
    pub cache: Option<bool>,
    pub jobs: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))
    }
}

/// Fully resolved settings for one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Settings {
    /// `None` when the on-disk cache is disabled.
    pub cache_dir: Option<PathBuf>,
    /// `None` means one worker per core.
    pub jobs: Option<usize>,
}

/// The built-in cache location: `$XDG_CACHE_HOME/hecke`, else
/// `$HOME/.cache/hecke`, else a directory under the system temp dir.
pub fn default_cache_dir(env: &dyn Fn(&str) -> Option<String>) -> PathBuf {
    if let Some(xdg) = env("XDG_CACHE_HOME").filter(|s| !s.is_empty()) {
        return PathBuf::from(xdg).join("hecke");
    }
    if let Some(home) = env("HOME").filter(|s| !s.is_empty()) {
        return PathBuf::from(home).join(".cache").join("hecke");
    }
    std::env::temp_dir().join("hecke-cache")
}

pub fn resolve(flags: &GlobalArgs, env: &dyn Fn(&str) -> Option<String>) -> CliResult<Settings> {
    let file = match &flags.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let jobs = flags.jobs.or(file.jobs);
    if jobs == Some(0) {
        return Err(CliError::Usage("jobs must be at least 1".into()));
    }
    let enabled = !flags.no_cache && file.cache.unwrap_or(true);
    let cache_dir = enabled.then(|| {
        flags
            .cache_dir
            .clone()
            .or(file.cache_dir)
            .or_else(|| env(CACHE_DIR_ENV).filter(|s| !s.is_empty()).map(PathBuf::from))
            .unwrap_or_else(|| default_cache_dir(env))
    });
    Ok(Settings { cache_dir, jobs })
}
