//! Run configuration: built-in defaults, an optional JSON file and flags,
//! applied in that order.

use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::Deserialize;
use springopt_core::solve::GridSpec;
use springopt_core::ConstraintParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: ConstraintParams,
    pub tol: f64,
    pub grid: GridSpec,
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub format: Format,
}

pub const DEFAULT_TOL: f64 = 1e-6;
pub const DEFAULT_GRID_STEP: f64 = 0.02;
pub const DEFAULT_GRID_MAX: f64 = 2.5;
pub const DEFAULT_SEED: u64 = 1;

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            params: ConstraintParams::default(),
            tol: DEFAULT_TOL,
            grid: GridSpec::uniform(DEFAULT_GRID_STEP, DEFAULT_GRID_MAX),
            seed: DEFAULT_SEED,
            output: None,
            format: Format::Text,
        }
    }
}

/// Grid as it may appear in a file; a missing `lower` follows `step`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridFile {
    lower: Option<f64>,
    upper: Option<f64>,
    step: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    params: Option<ConstraintParams>,
    tol: Option<f64>,
    grid: Option<GridFile>,
    seed: Option<u64>,
    output: Option<PathBuf>,
    format: Option<Format>,
}

/// Flag values; `None` leaves the file or default value in place.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub f_min: Option<f64>,
    pub fr_min: Option<f64>,
    pub tol: Option<f64>,
    pub grid_step: Option<f64>,
    pub grid_max: Option<f64>,
    pub seed: Option<u64>,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<RunConfig, String> {
        let file: ConfigFile = serde_json::from_str(text).map_err(|e| format!("config: {e}"))?;
        let mut cfg = RunConfig::default();
        if let Some(p) = file.params {
            cfg.params = p;
        }
        if let Some(t) = file.tol {
            cfg.tol = t;
        }
        if let Some(g) = file.grid {
            let step = g.step.unwrap_or(cfg.grid.step);
            cfg.grid = GridSpec {
                lower: g.lower.unwrap_or(step),
                upper: g.upper.unwrap_or(cfg.grid.upper),
                step,
            };
        }
        if let Some(s) = file.seed {
            cfg.seed = s;
        }
        cfg.output = file.output;
        if let Some(f) = file.format {
            cfg.format = f;
        }
        Ok(cfg)
    }

    pub fn load(path: Option<&Path>) -> Result<RunConfig, String> {
        match path {
            None => Ok(RunConfig::default()),
            Some(p) => {
                let text = fs::read_to_string(p)
                    .map_err(|e| format!("cannot read config {}: {e}", p.display()))?;
                RunConfig::from_json(&text)
            }
        }
    }

    pub fn apply(mut self, o: &Overrides) -> Result<RunConfig, String> {
        let p = &mut self.params;
        p.alpha = o.alpha.unwrap_or(p.alpha);
        p.beta = o.beta.unwrap_or(p.beta);
        p.f_min = o.f_min.unwrap_or(p.f_min);
        p.fr_min = o.fr_min.unwrap_or(p.fr_min);
        self.tol = o.tol.unwrap_or(self.tol);
        if let Some(step) = o.grid_step {
            // the grid starts one step above zero
            self.grid.step = step;
            self.grid.lower = step;
        }
        self.grid.upper = o.grid_max.unwrap_or(self.grid.upper);
        self.seed = o.seed.unwrap_or(self.seed);
        if o.output.is_some() {
            self.output.clone_from(&o.output);
        }
        self.format = o.format.unwrap_or(self.format);
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<(), String> {
        self.params.validate().map_err(|e| e.to_string())?;
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(format!("tol must be positive, got {}", self.tol));
        }
        self.grid.validate().map_err(|e| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_the_reference_constants() {
        let c = RunConfig::default();
        assert_eq!(
            c.params,
            ConstraintParams {
                alpha: 0.2,
                beta: 0.1,
                f_min: 0.75,
                fr_min: 0.5
            }
        );
        assert_eq!(
            c.grid,
            GridSpec {
                lower: 0.02,
                upper: 2.5,
                step: 0.02
            }
        );
        assert_eq!(c.format, Format::Text);
    }

    #[test]
    fn file_then_flags() {
        let cfg = RunConfig::from_json(
            r#"{"params": {"fr_min": 0.3}, "grid": {"step": 0.05}, "seed": 9, "format": "csv"}"#,
        )
        .unwrap();
        assert_eq!(cfg.params.fr_min, 0.3);
        assert_eq!(cfg.params.alpha, 0.2);
        assert_eq!(cfg.grid.lower, 0.05);
        assert_eq!(cfg.seed, 9);
        let cfg = cfg
            .apply(&Overrides {
                fr_min: Some(0.4),
                seed: Some(3),
                ..Default::default()
            })
            .unwrap();
        assert_eq!(cfg.params.fr_min, 0.4);
        assert_eq!(cfg.seed, 3);
        assert_eq!(cfg.format, Format::Csv);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert!(RunConfig::from_json(r#"{"tolerance": 1}"#).is_err());
        assert!(RunConfig::default()
            .apply(&Overrides {
                tol: Some(0.0),
                ..Default::default()
            })
            .is_err());
        assert!(RunConfig::default()
            .apply(&Overrides {
                f_min: Some(-1.0),
                ..Default::default()
            })
            .is_err());
    }
}
