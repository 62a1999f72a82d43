use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use superfock::ModeConfig;

use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Parameters of a run. Every field has a default; unknown keys are
/// rejected.
///
/// | key | default |
/// |---|---|
/// | `cutoff` | 12 |
/// | `margin` | 1 |
/// | `couplings` | `[1.0, 0.7]` |
/// | `wz_coupling` | 0.5 |
/// | `wz_cutoff` | 24 |
/// | `wz_levels` | 6 |
/// | `betas` | `[ln 1.5, ln 2, 1]` |
/// | `s_values` | `[0.1, 1, π]` |
/// | `thermal_cutoff` | 40 |
/// | `kbar_grid` | `[0, 0.25, 0.5, 0.75, 1]` |
/// | `phi_steps` | 256 |
/// | `random_draws` | 100 |
/// | `seed` | 7 |
/// | `tolerance` | none |
/// | `format` | `"csv"` |
/// | `output` | none (stdout) |
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Boson cutoff `Λ` of the algebra and evolution suites.
    pub cutoff: usize,
    /// Safe margin for identities that move one boson quantum.
    pub margin: usize,
    /// Couplings `k_i` of the multi-mode charge.
    pub couplings: Vec<f64>,
    /// Deformation `g` of the Wess–Zumino charge.
    pub wz_coupling: f64,
    pub wz_cutoff: usize,
    /// Number of low-lying levels compared between `Λ` and `Λ + 4`.
    pub wz_levels: usize,
    pub betas: Vec<f64>,
    pub s_values: Vec<f64>,
    pub thermal_cutoff: usize,
    pub kbar_grid: Vec<f64>,
    pub phi_steps: usize,
    pub random_draws: usize,
    pub seed: u64,
    /// Replaces every upper-bound tolerance of `check`.
    pub tolerance: Option<f64>,
    pub format: Format,
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            cutoff: 12,
            margin: 1,
            couplings: vec![1.0, 0.7],
            wz_coupling: 0.5,
            wz_cutoff: 24,
            wz_levels: 6,
            betas: vec![1.5f64.ln(), 2f64.ln(), 1.0],
            s_values: vec![0.1, 1.0, std::f64::consts::PI],
            thermal_cutoff: 40,
            kbar_grid: vec![0.0, 0.25, 0.5, 0.75, 1.0],
            phi_steps: 256,
            random_draws: 100,
            seed: 7,
            tolerance: None,
            format: Format::Csv,
            output: None,
        }
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::ReadConfig {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text)
    }

    /// Single-mode space at `cutoff` with `margin`.
    pub fn single_mode(&self) -> Result<ModeConfig> {
        Ok(ModeConfig::single_mode(self.cutoff)?.with_margin(self.margin)?)
    }

    /// `F = B = couplings.len()` at `cutoff`.
    pub fn multi_mode(&self) -> Result<ModeConfig> {
        Ok(ModeConfig::paired(self.couplings.clone(), self.cutoff)?.with_margin(self.margin)?)
    }

    pub fn validate(&self) -> Result<()> {
        let margin_error = |e: superfock::Error| invalid(e.to_string());
        self.single_mode().map_err(|e| match e {
            CliError::Core(e) => margin_error(e),
            other => other,
        })?;
        self.multi_mode().map_err(|e| match e {
            CliError::Core(e) => margin_error(e),
            other => other,
        })?;
        if self.margin == 0 {
            return Err(invalid("margin must be at least 1"));
        }
        if self.cutoff < 3 {
            return Err(invalid("cutoff must be at least 3 for the margin-2 closed forms"));
        }
        if !self.wz_coupling.is_finite() {
            return Err(invalid("wz_coupling must be finite"));
        }
        if self.wz_cutoff <= superfock::dynamics::supercharge::WZ_MARGIN {
            return Err(invalid(format!(
                "wz_cutoff must exceed {}",
                superfock::dynamics::supercharge::WZ_MARGIN
            )));
        }
        if self.wz_levels == 0 || self.wz_levels > 2 * self.wz_cutoff {
            return Err(invalid("wz_levels must be between 1 and twice wz_cutoff"));
        }
        if let Some(b) = self.betas.iter().find(|b| !(b.is_finite() && **b > 0.0)) {
            return Err(invalid(format!("every beta must be positive, got {b}")));
        }
        if self.s_values.iter().any(|s| !s.is_finite()) {
            return Err(invalid("s values must be finite"));
        }
        if self.kbar_grid.iter().any(|k| !(k.is_finite() && *k >= 0.0)) {
            return Err(invalid("kbar values must be nonnegative"));
        }
        if self.phi_steps < 2 {
            return Err(invalid("phi_steps must be at least 2"));
        }
        if self.thermal_cutoff < 2 {
            return Err(invalid("thermal_cutoff must be at least 2"));
        }
        if let Some(t) = self.tolerance {
            if !(t.is_finite() && t > 0.0) {
                return Err(invalid(format!("tolerance must be positive, got {t}")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        RunConfig::default().validate().unwrap();
        assert_eq!(RunConfig::from_json("{}").unwrap(), RunConfig::default());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(matches!(
            RunConfig::from_json(r#"{"cutof": 4}"#),
            Err(CliError::ParseConfig(_))
        ));
    }

    #[test]
    fn margin_beyond_cutoff_is_a_config_error() {
        let err = RunConfig::from_json(r#"{"cutoff": 2, "margin": 4}"#).unwrap_err();
        assert!(matches!(err, CliError::Config(_)));
        assert_eq!(err.exit_code(), crate::error::EXIT_USAGE);
    }

    #[test]
    fn format_parses_lowercase() {
        let c = RunConfig::from_json(r#"{"format": "json", "betas": [0.5]}"#).unwrap();
        assert_eq!(c.format, Format::Json);
        assert!(RunConfig::from_json(r#"{"betas": [-1.0]}"#).is_err());
    }
}
