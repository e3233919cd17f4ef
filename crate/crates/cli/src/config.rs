//! Resolved run configuration: defaults, then `--config` file, then flags.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use ffcount_core::asymptotics::{KRule, Regime, RegimeParams};
use ffcount_core::irreducibles::DEFAULT_GUARD;
use ffcount_core::series::SeriesKind;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Every parameter a run can depend on. Serialized in full into the output
/// header, except the thread count, which never changes the output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub command: String,
    pub q: u64,
    /// Largest `n` (or degree `d` for `pi`).
    pub n_max: usize,
    pub k_max: Option<usize>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    /// `[re, im]`.
    pub z: Option<[f64; 2]>,
    pub kind: SeriesKind,
    pub trunc_degree: usize,
    pub oracle_guard: u64,
    pub quadrature_nodes: Option<usize>,
    pub regime: RegimeParams,
    pub regime_filter: Option<Regime>,
    pub k_rule: Option<KRule>,
    pub eta: Option<f64>,
    pub bound_delta: f64,
    pub verify: bool,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub strict: bool,
    /// Worker threads, 0 = one per core.
    #[serde(skip_serializing)]
    pub threads: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: String::new(),
            q: 3,
            n_max: 100,
            k_max: None,
            n: None,
            k: None,
            z: None,
            kind: SeriesKind::AllMonics,
            trunc_degree: 40,
            oracle_guard: DEFAULT_GUARD,
            quadrature_nodes: None,
            regime: RegimeParams::default(),
            regime_filter: None,
            k_rule: None,
            eta: None,
            bound_delta: 0.6,
            verify: false,
            format: None,
            output: None,
            strict: false,
            threads: 0,
        }
    }
}

/// Keys a config document may contain.
fn known_keys() -> BTreeSet<String> {
    let mut keys: BTreeSet<String> = match serde_json::to_value(RunConfig::default()) {
        Ok(Value::Object(m)) => m.keys().cloned().collect(),
        _ => BTreeSet::new(),
    };
    keys.insert("threads".into());
    keys
}

/// Parsed config file plus whether it set the thread count itself.
pub struct Loaded {
    pub config: RunConfig,
    pub sets_threads: bool,
}

impl RunConfig {
    /// Parses a config document. Unknown keys are an error when `strict` is
    /// set here or inside the document.
    pub fn from_json(text: &str, strict: bool) -> Result<Loaded, CliError> {
        let value: Value = serde_json::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))?;
        let Value::Object(map) = &value else {
            return Err(CliError::Usage("config must be a JSON object".into()));
        };
        let config: RunConfig =
            serde_json::from_value(value.clone()).map_err(|e| CliError::Usage(format!("config: {e}")))?;
        if strict || config.strict {
            let known = known_keys();
            let unknown: Vec<&String> = map.keys().filter(|k| !known.contains(*k)).collect();
            if !unknown.is_empty() {
                return Err(CliError::Usage(format!("config: unknown keys {unknown:?}")));
            }
        }
        Ok(Loaded { sets_threads: map.contains_key("threads"), config })
    }

    pub fn load(path: &Path, strict: bool) -> Result<Loaded, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_json(&text, strict)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}

/// Thread count from `FFCOUNT_THREADS`, if set.
pub fn threads_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var("FFCOUNT_THREADS") {
        Ok(s) if !s.trim().is_empty() => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Usage(format!("FFCOUNT_THREADS must be a non-negative integer, got {s:?}"))),
        _ => Ok(None),
    }
}
