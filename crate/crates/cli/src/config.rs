//! Run configuration: defaults, TOML file, environment override.

use std::collections::BTreeMap;
use std::path::Path;

use cmorbit_core::arith::{AlphaOverride, AlphaTable};
use cmorbit_core::cmgroup::DEFAULT_CLOSURE_CAP;
use cmorbit_core::localinv::H2_ORDER_CAP;
use cmorbit_core::precise::MIN_PRECISION;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Config file read when `--config` is absent and the file exists.
pub const DEFAULT_CONFIG_PATH: &str = "cmorbit.toml";

/// Environment variable overriding `precision_digits`.
pub const PRECISION_ENV: &str = "CMORBIT_PRECISION";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Pretty,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub precision_digits: u32,
    pub closure_cap: usize,
    pub h2_order_cap: usize,
    /// Keys are `s` written as strings, as TOML table keys must be.
    pub alpha_overrides: BTreeMap<String, AlphaOverride>,
    pub output: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            precision_digits: 50,
            closure_cap: DEFAULT_CLOSURE_CAP,
            h2_order_cap: H2_ORDER_CAP,
            alpha_overrides: BTreeMap::new(),
            output: OutputFormat::Pretty,
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    /// Explicit file, else the default path if present, else defaults; then
    /// the precision environment variable. The caller validates once the
    /// command-line overrides are applied.
    pub fn discover(explicit: Option<&Path>) -> Result<Self, CliError> {
        let mut cfg = match explicit {
            Some(p) => Self::from_file(p)?,
            None if Path::new(DEFAULT_CONFIG_PATH).is_file() => Self::from_file(Path::new(DEFAULT_CONFIG_PATH))?,
            None => Self::default(),
        };
        if let Ok(v) = std::env::var(PRECISION_ENV) {
            cfg.precision_digits =
                v.trim().parse().map_err(|_| CliError::Config(format!("{PRECISION_ENV}={v:?} is not an integer")))?;
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.precision_digits < MIN_PRECISION {
            return Err(CliError::Config(format!(
                "precision_digits must be at least {MIN_PRECISION}, got {}",
                self.precision_digits
            )));
        }
        if self.closure_cap == 0 || self.h2_order_cap == 0 {
            return Err(CliError::Config("caps must be positive".into()));
        }
        self.alpha_table().map(|_| ())
    }

    pub fn alpha_table(&self) -> Result<AlphaTable, CliError> {
        let mut table = AlphaTable::new();
        for (key, entry) in &self.alpha_overrides {
            let s: u32 =
                key.parse().map_err(|_| CliError::Config(format!("alpha_overrides key {key:?} is not an integer")))?;
            table.set_override(s, entry.clone()).map_err(|e| CliError::Config(e.to_string()))?;
        }
        Ok(table)
    }
}
