//! Run configuration: a flat `key = value` file, overridden by flags.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symbreak::{ScanOptions, DEFAULT_GRID, ROOT_XTOL};
use crate::wave::{WaveOptions, DEFAULT_TRUNCATION};

/// Environment variable naming a config file.
pub const CONFIG_ENV: &str = "CWHITHAM_CONFIG";

/// Output formats understood by the emitters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
    Svg,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
            OutputFormat::Svg => "svg",
        }
    }
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            "svg" => Ok(OutputFormat::Svg),
            other => Err(Error::domain(format!("unknown format {other:?}; expected csv, json or svg"))),
        }
    }
}

/// Tolerances, sizes and output settings shared by every command.
///
/// Keys in a config file use the flag spellings, e.g.
///
/// ```text
/// tol-newton = 1e-12
/// grid = 400
/// K = 96
/// format = ["csv", "svg"]
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct RunConfig {
    /// Bracket width at which roots of `phi` are accepted.
    pub tol_root: f64,
    /// Update size at which the fixed point for `w` counts as converged.
    pub tol_w: f64,
    /// Max-norm target of the scaled kernel equations.
    pub tol_newton: f64,
    /// Sample count for `phi` curves and root searches.
    pub grid: usize,
    #[serde(rename = "K")]
    pub truncation: usize,
    /// Worker threads for pair scans.
    pub jobs: usize,
    /// Output directory; standard output when unset.
    pub out: Option<PathBuf>,
    /// Formats to emit; empty means the command's default.
    pub format: Vec<OutputFormat>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let waves = WaveOptions::default();
        Self {
            tol_root: ROOT_XTOL,
            tol_w: waves.w_tol,
            tol_newton: waves.newton_tol,
            grid: DEFAULT_GRID,
            truncation: DEFAULT_TRUNCATION,
            jobs: 1,
            out: None,
            format: Vec::new(),
        }
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let config: Self = toml::from_str(text).map_err(|e| Error::domain(format!("config: {}", e.message())))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text).map_err(|e| match e {
            Error::Domain(msg) => Error::domain(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// The file named by `explicit`, else by [`CONFIG_ENV`], else defaults.
    pub fn resolve(explicit: Option<&Path>) -> Result<Self> {
        if let Some(path) = explicit {
            return Self::load(path);
        }
        match std::env::var_os(CONFIG_ENV) {
            Some(path) if !path.is_empty() => Self::load(Path::new(&path)),
            _ => Ok(Self::default()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, tol) in [("tol-root", self.tol_root), ("tol-w", self.tol_w), ("tol-newton", self.tol_newton)] {
            if !(tol.is_finite() && tol > 0.0) {
                return Err(Error::domain(format!("{name} must be finite and > 0, got {tol}")));
            }
        }
        if self.jobs == 0 {
            return Err(Error::domain("jobs must be at least 1"));
        }
        if self.grid < 2 {
            return Err(Error::domain(format!("grid must be at least 2, got {}", self.grid)));
        }
        if self.truncation == 0 {
            return Err(Error::domain("K must be positive"));
        }
        Ok(())
    }

    pub fn wave_options(&self) -> WaveOptions {
        WaveOptions {
            truncation: self.truncation,
            w_tol: self.tol_w,
            newton_tol: self.tol_newton,
            ..WaveOptions::default()
        }
    }

    pub fn scan_options(&self, find_roots: bool) -> ScanOptions {
        ScanOptions { grid_size: self.grid, find_roots, jobs: Some(self.jobs), root_tol: self.tol_root }
    }

    /// The configured formats, or `fallback` when none are set.
    pub fn formats_or(&self, fallback: &[OutputFormat]) -> Vec<OutputFormat> {
        if self.format.is_empty() {
            fallback.to_vec()
        } else {
            let mut f = self.format.clone();
            f.sort();
            f.dedup();
            f
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        assert_eq!(RunConfig::parse("").unwrap(), RunConfig::default());
        let d = RunConfig::default();
        assert_eq!((d.grid, d.truncation, d.tol_newton, d.tol_w), (200, 64, 1e-12, 1e-14));
    }

    #[test]
    fn keys_use_flag_spelling() {
        let c = RunConfig::parse("tol-newton = 1e-11\nK = 96\njobs = 4\nformat = [\"svg\", \"csv\"]\n").unwrap();
        assert_eq!(c.tol_newton, 1e-11);
        assert_eq!(c.truncation, 96);
        assert_eq!(c.jobs, 4);
        assert_eq!(c.formats_or(&[]), vec![OutputFormat::Csv, OutputFormat::Svg]);
    }

    #[test]
    fn bad_values_are_rejected() {
        assert!(RunConfig::parse("tol-w = 0.0").is_err());
        assert!(RunConfig::parse("jobs = 0").is_err());
        assert!(RunConfig::parse("colour = 3").is_err());
        assert!(RunConfig::parse("[section]\nK = 3").is_err());
    }
}
