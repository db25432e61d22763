//! Run settings resolved as flags > config file > environment (cache dir only) > defaults.

use hermlift::lvalue::AfeConfig;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

pub const CACHE_DIR_ENV: &str = "HERMLIFT_CACHE_DIR";
const DEFAULT_CACHE_DIR: &str = ".hermlift-cache";

/// Relative gap accepted between the two sides of an identity.
pub const DEFAULT_TOL: f64 = 1e-6;
/// Target for the Petersson quadrature.
pub const DEFAULT_PETERSSON_TOL: f64 = 1e-12;

const KEYS: [&str; 9] = [
    "tol",
    "nmax",
    "cache_dir",
    "petersson_tol",
    "afe_tol",
    "abscissa",
    "regulator",
    "step",
    "half_width",
];

/// Values that flags may override.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub tol: Option<f64>,
    pub nmax: Option<usize>,
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct Settings {
    pub tol: f64,
    pub nmax: Option<usize>,
    pub cache_dir: PathBuf,
    pub petersson_tol: f64,
    pub afe: AfeConfig,
}

/// `key = value` lines; `#` starts a comment.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, String> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key=value", i + 1))?;
        let key = key.trim();
        if !KEYS.contains(&key) {
            return Err(format!("config line {}: unknown key {key:?}", i + 1));
        }
        map.insert(key.to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn parsed<T: std::str::FromStr>(map: &BTreeMap<String, String>, key: &str) -> Result<Option<T>, String> {
    map.get(key)
        .map(|v| v.parse().map_err(|_| format!("config key {key}: cannot parse {v:?}")))
        .transpose()
}

impl Settings {
    pub fn resolve(flags: &Overrides, config: Option<&Path>) -> Result<Self, String> {
        let map = match config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| format!("reading config {}: {e}", path.display()))?;
                parse_config(&text)?
            }
            None => BTreeMap::new(),
        };
        Self::from_layers(flags, &map, std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from))
    }

    pub fn from_layers(
        flags: &Overrides,
        map: &BTreeMap<String, String>,
        env_cache: Option<PathBuf>,
    ) -> Result<Self, String> {
        let defaults = AfeConfig::default();
        let afe = AfeConfig {
            abscissa: parsed(map, "abscissa")?.unwrap_or(defaults.abscissa),
            regulator: parsed(map, "regulator")?.unwrap_or(defaults.regulator),
            step: parsed(map, "step")?.unwrap_or(defaults.step),
            half_width: parsed(map, "half_width")?.unwrap_or(defaults.half_width),
            n_terms: None,
            tol: parsed(map, "afe_tol")?.unwrap_or(defaults.tol),
        };
        let cache_dir = flags
            .cache_dir
            .clone()
            .or(parsed::<PathBuf>(map, "cache_dir")?)
            .or(env_cache)
            .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR));
        Ok(Self {
            tol: flags.tol.or(parsed(map, "tol")?).unwrap_or(DEFAULT_TOL),
            nmax: flags.nmax.or(parsed(map, "nmax")?),
            cache_dir,
            petersson_tol: parsed(map, "petersson_tol")?.unwrap_or(DEFAULT_PETERSSON_TOL),
            afe,
        })
    }
}
