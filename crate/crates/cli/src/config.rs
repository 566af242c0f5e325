//! Settings from a TOML file, overridden by command-line flags.

use std::path::{Path, PathBuf};

use donkin_core::modular::Prime;
use donkin_core::rootdata::DEFAULT_ORBIT_CAP;
use serde::Deserialize;

pub const CACHE_ENV: &str = "DONKIN_CACHE_DIR";
pub const DEFAULT_CONFIG: &str = "donkin.toml";
pub const DEFAULT_CACHE_DIR: &str = ".donkin-cache";
pub const MIN_ORBIT_CAP: usize = 10_000;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    cache_dir: Option<PathBuf>,
    orbit_cap: Option<usize>,
    primes: Option<Vec<u32>>,
    jobs: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    /// `None` disables the cache.
    pub cache_dir: Option<PathBuf>,
    pub orbit_cap: usize,
    /// Primes for campaign cases that list none.
    pub primes: Vec<u32>,
    /// Worker threads for campaign cases.
    pub jobs: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            cache_dir: Some(PathBuf::from(DEFAULT_CACHE_DIR)),
            orbit_cap: DEFAULT_ORBIT_CAP,
            primes: vec![3, 5, 7, 11, 13],
            jobs: 1,
        }
    }
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub cache_dir: Option<PathBuf>,
    pub no_cache: bool,
    pub orbit_cap: Option<usize>,
    pub jobs: Option<usize>,
}

impl Config {
    /// Reads `path`, or `donkin.toml` in the working directory when present.
    /// The cache directory comes from the flag, then the environment, then the file.
    pub fn load(path: Option<&Path>, env_cache: Option<PathBuf>, flags: &Overrides) -> Result<Config, String> {
        let file = match path {
            Some(p) => Some(read(p)?),
            None if Path::new(DEFAULT_CONFIG).is_file() => Some(read(Path::new(DEFAULT_CONFIG))?),
            None => None,
        }
        .unwrap_or_default();
        let mut cfg = Config::default();
        if let Some(d) = file.cache_dir {
            cfg.cache_dir = Some(d);
        }
        if let Some(d) = env_cache.filter(|d| !d.as_os_str().is_empty()) {
            cfg.cache_dir = Some(d);
        }
        if let Some(d) = &flags.cache_dir {
            cfg.cache_dir = Some(d.clone());
        }
        if flags.no_cache {
            cfg.cache_dir = None;
        }
        cfg.orbit_cap = flags.orbit_cap.or(file.orbit_cap).unwrap_or(cfg.orbit_cap);
        cfg.primes = file.primes.unwrap_or(cfg.primes);
        cfg.jobs = flags.jobs.or(file.jobs).unwrap_or(cfg.jobs);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.orbit_cap < MIN_ORBIT_CAP {
            return Err(format!("orbit cap {} is below {MIN_ORBIT_CAP}", self.orbit_cap));
        }
        for &p in &self.primes {
            Prime::new(p).map_err(|e| e.to_string())?;
        }
        if self.jobs == 0 {
            return Err("jobs must be at least 1".into());
        }
        Ok(())
    }
}

fn read(path: &Path) -> Result<FileConfig, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}
