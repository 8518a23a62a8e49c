//! Budget defaults read from a TOML file named by `PREMON_CONFIG`.
//!
//! ```toml
//! [budget]
//! chain_depth = 30
//! factor_cap = 6
//! node_cap = 1000000
//! exponent_cap = 8
//! rewrite_radius = 6
//! ```
//!
//! Missing keys keep their defaults; unknown keys are rejected.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::{BudgetError, SearchBudget};

pub const CONFIG_ENV: &str = "PREMON_CONFIG";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid config: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("invalid config: {0}")]
    Budget(#[from] BudgetError),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Config {
    pub budget: SearchBudget,
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let config: Config = toml::from_str(text)?;
        config.budget.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Config::from_toml(&text)
    }

    /// The file named by `PREMON_CONFIG`, or the defaults when it is unset.
    pub fn from_env() -> Result<Self, ConfigError> {
        match std::env::var_os(CONFIG_ENV) {
            Some(path) if !path.is_empty() => Config::load(Path::new(&path)),
            _ => Ok(Config::default()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_file_keeps_defaults() {
        let c = Config::from_toml("[budget]\nchain_depth = 12\n").unwrap();
        assert_eq!(c.budget.chain_depth, 12);
        assert_eq!(c.budget.exponent_cap, 8);
        assert_eq!(Config::from_toml("").unwrap(), Config::default());
    }

    #[test]
    fn rejects_unknown_and_zero() {
        assert!(matches!(Config::from_toml("[budget]\ndepth = 3\n"), Err(ConfigError::Parse(_))));
        assert!(matches!(Config::from_toml("[budget]\nnode_cap = 0\n"), Err(ConfigError::Budget(_))));
        assert!(matches!(Config::from_toml("verbose = true\n"), Err(ConfigError::Parse(_))));
    }
}
