//! Run configuration: defaults, an optional TOML file, then command-line
//! flags, each overriding the previous layer.

use std::path::{Path, PathBuf};

use phasecov::{TimeGrid, Tolerances};
use serde::Deserialize;

use crate::UsageError;

pub const DEFAULT_SEED: u64 = 7;

/// Keys accepted in a `--config` file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub t_max: Option<f64>,
    pub points: Option<usize>,
    pub tol: Option<f64>,
    pub singularity: Option<f64>,
    pub seed: Option<u64>,
    pub output: Option<PathBuf>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, UsageError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| UsageError(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| UsageError(format!("invalid config {}: {e}", path.display())))
    }
}

/// Overrides given on the command line.
#[derive(Debug, Default, Clone)]
pub struct FlagOverrides {
    pub t_max: Option<f64>,
    pub points: Option<usize>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub grid: TimeGrid,
    pub tolerances: Tolerances,
    pub seed: u64,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn resolve(file: ConfigFile, flags: FlagOverrides) -> Result<Self, UsageError> {
        let t_max = flags.t_max.or(file.t_max).unwrap_or(TimeGrid::DEFAULT_T_MAX);
        let points = flags.points.or(file.points).unwrap_or(TimeGrid::DEFAULT_POINTS);
        if points < 3 || points % 2 == 0 {
            return Err(UsageError(format!("--points must be odd and at least 3, got {points}")));
        }
        let grid = TimeGrid::new(t_max, points).map_err(|e| UsageError(e.to_string()))?;

        let mut tolerances = Tolerances::default();
        if let Some(tol) = flags.tol.or(file.tol) {
            if !(tol.is_finite() && tol >= 0.0) {
                return Err(UsageError(format!("--tol must be a nonnegative number, got {tol}")));
            }
            tolerances.cp = tol;
            tolerances.divisibility = tol;
            tolerances.commutativity = tol;
        }
        if let Some(s) = file.singularity {
            if !(s.is_finite() && s > 0.0) {
                return Err(UsageError(format!("singularity must be positive, got {s}")));
            }
            tolerances.singularity = s;
        }
        Ok(Self {
            grid,
            tolerances,
            seed: flags.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
            output: flags.output.or(file.output),
        })
    }
}
