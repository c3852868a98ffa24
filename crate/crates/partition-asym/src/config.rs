//! Run configuration: precision, caps, output format, seed.
//!
//! Precedence, lowest to highest: built-in defaults, optional TOML config
//! file, environment variables (`PARTITION_ASYM_PRECISION_BITS`,
//! `PARTITION_ASYM_EXACT_CAP`), command-line flags. All runs are
//! deterministic given the resolved configuration.

use serde::{Deserialize, Serialize};

use crate::count::DEFAULT_EXACT_CAP;
use crate::error::{Error, Result};
use crate::xreal::DEFAULT_PRECISION_BITS;

pub const ENV_PRECISION_BITS: &str = "PARTITION_ASYM_PRECISION_BITS";
pub const ENV_EXACT_CAP: &str = "PARTITION_ASYM_EXACT_CAP";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub precision_bits: usize,
    pub exact_cap: u64,
    pub format: OutputFormat,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            precision_bits: DEFAULT_PRECISION_BITS,
            exact_cap: DEFAULT_EXACT_CAP,
            format: OutputFormat::Csv,
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::domain(format!("config file: {e}")))
    }

    /// Apply environment overrides for precision and the exact-count cap.
    pub fn apply_env(mut self) -> Result<Self> {
        if let Ok(v) = std::env::var(ENV_PRECISION_BITS) {
            self.precision_bits = v
                .parse()
                .map_err(|_| Error::domain(format!("{ENV_PRECISION_BITS} must be an integer")))?;
        }
        if let Ok(v) = std::env::var(ENV_EXACT_CAP) {
            self.exact_cap = v
                .parse()
                .map_err(|_| Error::domain(format!("{ENV_EXACT_CAP} must be an integer")))?;
        }
        Ok(self)
    }
}
