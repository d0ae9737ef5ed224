//! TOML run configuration.

use std::fmt;
use std::path::{Path, PathBuf};

use nc_workbench::suite::SuiteParams;
use serde::{Deserialize, Serialize};

/// Schema version this binary reads.
pub const SCHEMA_VERSION: u32 = 1;

/// The only supported generator: ChaCha8 seeded from a `u64`.
pub const RNG_NAME: &str = "chacha8";

const SHIPPED: &str = include_str!("../../../config/default.toml");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Output {
    pub dir: PathBuf,
}

impl Default for Output {
    fn default() -> Self {
        Self { dir: PathBuf::from("reports") }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: u32,
    pub experiment: String,
    pub seed: u64,
    pub rng: String,
    #[serde(default)]
    pub output: Output,
    #[serde(default)]
    pub params: SuiteParams,
}

#[derive(Debug)]
pub struct ConfigError(String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| ConfigError(format!("config parse error: {e}")))?;
        if cfg.schema_version != SCHEMA_VERSION {
            return Err(ConfigError(format!(
                "config schema_version {} is not supported (expected {SCHEMA_VERSION})",
                cfg.schema_version
            )));
        }
        if cfg.rng != RNG_NAME {
            return Err(ConfigError(format!("unknown rng {:?} (expected {RNG_NAME:?})", cfg.rng)));
        }
        if cfg.experiment.trim().is_empty() {
            return Err(ConfigError("experiment name is empty".into()));
        }
        cfg.params.validate().map_err(|e| ConfigError(e.to_string()))?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn shipped() -> Self {
        Self::parse(SHIPPED).expect("shipped config is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_config_matches_library_defaults() {
        let cfg = RunConfig::shipped();
        assert_eq!(cfg.params, SuiteParams::default());
        assert_eq!(cfg.rng, RNG_NAME);
    }

    #[test]
    fn minimal_config_uses_defaults() {
        let cfg = RunConfig::parse("schema_version = 1\nexperiment = \"x\"\nseed = 3\nrng = \"chacha8\"\n").unwrap();
        assert_eq!(cfg.params, SuiteParams::default());
        assert_eq!(cfg.output, Output::default());
    }

    #[test]
    fn rejects_bad_configs() {
        let base = "experiment = \"x\"\nseed = 3\nrng = \"chacha8\"\n";
        assert!(RunConfig::parse(base).is_err());
        assert!(RunConfig::parse(&format!("schema_version = 2\n{base}")).is_err());
        assert!(RunConfig::parse(&format!("schema_version = 1\n{base}[params.weyl]\nlatice = 3\n")).is_err());
        assert!(RunConfig::parse(&format!("schema_version = 1\n{base}[params.forms]\ntol = 0.0\n")).is_err());
        let other_rng = "schema_version = 1\nexperiment = \"x\"\nseed = 3\nrng = \"pcg\"\n";
        assert!(RunConfig::parse(other_rng).is_err());
    }
}
