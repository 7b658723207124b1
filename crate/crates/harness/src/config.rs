//! Model configuration files.
//!
//! ```json
//! {
//!   "points": ["w0", "w1"],
//!   "weights": ["1/2", "1/2"],
//!   "generators": [
//!     {"name": "a", "members": ["w0"]},
//!     {"name": "u", "members": ["w0", "w1"]}
//!   ],
//!   "caps": {"max_gens": 8, "max_k": 4, "p_max": 64},
//!   "seed": 7,
//!   "draws": 200,
//!   "sweep": true,
//!   "suites": ["all"]
//! }
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};
use stonemeasure::rat::parse_rat;
use stonemeasure::{GenSystem, Space, DEFAULT_GENERATOR_CAP, DEFAULT_POWER_CAP};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("{path}: {field}: {message}")]
    Invalid { path: String, field: String, message: String },
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    pub members: Vec<String>,
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(deny_unknown_fields, default)]
pub struct Caps {
    /// Generator cap for the configured model.
    pub max_gens: usize,
    /// Largest product power `k` used for `μ_T^k`.
    pub max_k: u32,
    /// Largest moment exponent in the numeric norm path.
    pub p_max: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Self { max_gens: DEFAULT_GENERATOR_CAP, max_k: DEFAULT_POWER_CAP, p_max: 64 }
    }
}

fn default_draws() -> usize {
    200
}

fn default_sweep() -> bool {
    true
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub points: Vec<String>,
    pub weights: Vec<String>,
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub caps: Caps,
    #[serde(default)]
    pub seed: Option<u64>,
    /// Minimum randomized draws per suite, spread over all models.
    #[serde(default = "default_draws")]
    pub draws: usize,
    /// Also run every suite over the built-in sweep of small models.
    #[serde(default = "default_sweep")]
    pub sweep: bool,
    #[serde(default)]
    pub suites: Option<Vec<String>>,
}

impl ModelConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let shown = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: shown.clone(), source })?;
        Self::parse(&text, &shown)
    }

    pub fn parse(text: &str, origin: &str) -> Result<Self, ConfigError> {
        let config: ModelConfig =
            serde_json::from_str(text).map_err(|source| ConfigError::Json { path: origin.to_string(), source })?;
        config.build(origin)?;
        Ok(config)
    }

    /// The generator system described by the file, with located diagnostics.
    pub fn build(&self, origin: &str) -> Result<GenSystem, ConfigError> {
        let invalid =
            |field: String, message: String| ConfigError::Invalid { path: origin.to_string(), field, message };
        if self.weights.len() != self.points.len() {
            return Err(invalid(
                "weights".into(),
                format!("{} weights for {} points", self.weights.len(), self.points.len()),
            ));
        }
        let weights = self
            .weights
            .iter()
            .enumerate()
            .map(|(i, w)| parse_rat(w).map_err(|e| invalid(format!("weights[{i}]"), e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        let space = Space::new(self.points.clone(), weights).map_err(|e| invalid("weights".into(), e.to_string()))?;
        let mut gens = Vec::with_capacity(self.generators.len());
        for (i, spec) in self.generators.iter().enumerate() {
            let mut members = Vec::with_capacity(spec.members.len());
            for (j, id) in spec.members.iter().enumerate() {
                let point = space
                    .point_index(id)
                    .ok_or_else(|| invalid(format!("generators[{i}].members[{j}]"), format!("unknown point {id:?}")))?;
                members.push(point);
            }
            gens.push((spec.name.clone(), space.event(members)));
        }
        GenSystem::with_names(space, gens, self.caps.max_gens).map_err(|e| invalid("generators".into(), e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const M1: &str = include_str!("../models/m1.json");

    #[test]
    fn parses_shipped_model() {
        let config = ModelConfig::parse(M1, "m1.json").unwrap();
        let gs = config.build("m1.json").unwrap();
        assert_eq!(gs.m(), 3);
        assert_eq!(gs.atom_count(), 6);
        assert_eq!(config.caps, Caps::default());
    }

    #[test]
    fn rejects_unnormalized_weights() {
        let text = M1.replace("\"1/2\", \"1/2\"", "\"1/2\", \"1/4\"");
        let err = ModelConfig::parse(&text, "bad.json").unwrap_err().to_string();
        assert!(err.contains("weights must sum to 1"), "{err}");
    }

    #[test]
    fn locates_unknown_points() {
        let text = M1.replace("[\"w1\"]", "[\"w9\"]");
        let err = ModelConfig::parse(&text, "bad.json").unwrap_err().to_string();
        assert!(err.contains("generators[1].members[0]") && err.contains("w9"), "{err}");
    }

    #[test]
    fn rejects_unknown_fields() {
        let text = M1.replacen('{', "{\"colour\": 1,", 1);
        assert!(matches!(ModelConfig::parse(&text, "bad.json"), Err(ConfigError::Json { .. })));
    }
}
