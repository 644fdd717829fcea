//! JSON analysis configuration.
//!
//! A single document carries everything one command needs: the plant, the
//! controller gains, the render target, and optionally the frequency sweep
//! and tolerance settings. Plant, gains, and target are mandatory; sweep
//! and tolerances fall back to the library defaults so a minimal config
//! stays three fields long.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

use sea_passivity::{ControllerGains, PlantParams, RenderTarget};

/// Frequency sweep settings for Bode output and phase checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepRange {
    /// Lowest frequency in rad/s.
    #[serde(default = "default_wmin")]
    pub wmin: f64,
    /// Highest frequency in rad/s.
    #[serde(default = "default_wmax")]
    pub wmax: f64,
    /// Grid density between the endpoints.
    #[serde(default = "default_ppd")]
    pub points_per_decade: usize,
}

fn default_wmin() -> f64 {
    1e-3
}

fn default_wmax() -> f64 {
    1e6
}

fn default_ppd() -> usize {
    200
}

impl Default for SweepRange {
    fn default() -> Self {
        SweepRange {
            wmin: default_wmin(),
            wmax: default_wmax(),
            points_per_decade: default_ppd(),
        }
    }
}

impl SweepRange {
    fn validate(&self) -> Result<()> {
        anyhow::ensure!(
            self.wmin.is_finite() && self.wmin > 0.0,
            "sweep.wmin must be positive and finite, got {}",
            self.wmin
        );
        anyhow::ensure!(
            self.wmax.is_finite() && self.wmax > self.wmin,
            "sweep.wmax must be finite and above wmin, got {}",
            self.wmax
        );
        anyhow::ensure!(
            self.points_per_decade >= 1,
            "sweep.points_per_decade must be at least 1"
        );
        Ok(())
    }
}

/// Numerical tolerances for verdicts and phase assertions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// Relative width of the band around each closed-form boundary inside
    /// which a verdict is reported marginal instead of pass or fail.
    #[serde(default = "default_boundary_band")]
    pub boundary_band: f64,
    /// Slack in degrees when checking phase against the 90 degree line.
    #[serde(default = "default_phase_tol")]
    pub phase_tol_deg: f64,
}

fn default_boundary_band() -> f64 {
    1e-6
}

fn default_phase_tol() -> f64 {
    1e-6
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            boundary_band: default_boundary_band(),
            phase_tol_deg: default_phase_tol(),
        }
    }
}

impl Tolerances {
    fn validate(&self) -> Result<()> {
        anyhow::ensure!(
            self.boundary_band.is_finite() && (0.0..0.1).contains(&self.boundary_band),
            "tolerances.boundary_band must lie in [0, 0.1), got {}",
            self.boundary_band
        );
        anyhow::ensure!(
            self.phase_tol_deg.is_finite() && self.phase_tol_deg >= 0.0,
            "tolerances.phase_tol_deg must be nonnegative, got {}",
            self.phase_tol_deg
        );
        Ok(())
    }
}

/// One analysis problem: what hardware, what gains, what target.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisConfig {
    pub plant: PlantParams,
    pub gains: ControllerGains,
    pub target: RenderTarget,
    #[serde(default)]
    pub sweep: SweepRange,
    #[serde(default)]
    pub tolerances: Tolerances,
}

impl AnalysisConfig {
    /// Reads and validates a config file. Parse errors keep serde's
    /// line/column and field diagnostics; validation errors name the
    /// offending field.
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read config {}", path.display()))?;
        let config: AnalysisConfig = serde_json::from_str(&text)
            .with_context(|| format!("cannot parse config {}", path.display()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        self.plant.validate().map_err(anyhow::Error::from)?;
        self.gains.validate().map_err(anyhow::Error::from)?;
        self.target.validate().map_err(anyhow::Error::from)?;
        self.sweep.validate()?;
        self.tolerances.validate()
    }
}
