use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::judge::JudgeConfig;
use crate::mappers::MapperConfig;

/// Mapper knobs plus judge options, read from a flat TOML table:
///
/// ```toml
/// min_subtree_height = 2
/// dice_threshold = 0.5
/// name_similarity_threshold = 0.6
/// nit_names_only = false
/// ```
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Config {
    pub mapper: MapperConfig,
    pub judge: JudgeConfig,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    min_subtree_height: Option<usize>,
    dice_threshold: Option<f64>,
    name_similarity_threshold: Option<f64>,
    nit_names_only: Option<bool>,
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Config> {
        let file: ConfigFile = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let mut cfg = Config::default();
        if let Some(v) = file.min_subtree_height {
            cfg.mapper.min_subtree_height = v;
        }
        if let Some(v) = file.dice_threshold {
            cfg.mapper.dice_threshold = v;
        }
        if let Some(v) = file.name_similarity_threshold {
            cfg.mapper.name_similarity_threshold = v;
        }
        if let Some(v) = file.nit_names_only {
            cfg.judge.nit_names_only = v;
        }
        cfg.mapper.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Config::from_toml(&text)
    }
}
