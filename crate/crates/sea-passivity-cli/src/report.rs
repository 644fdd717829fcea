//! Output formatting: fixed-precision CSV and percentage rendering.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};

use sea_passivity::freq::{bode, segment_regimes};
use sea_passivity::polyalg::RationalTransferFunction;
use sea_passivity::RenderTarget;

use crate::config::SweepRange;

/// Output format of the reporting commands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Human-readable key/value lines.
    Table,
    /// One pretty-printed JSON document.
    Json,
}

/// Seventeen significant digits, enough to reproduce any double exactly,
/// so CSV files are byte-identical across runs and machines.
pub fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}

/// A signed margin as a percentage with one decimal.
pub fn percent(margin: f64) -> String {
    format!("{:.1}%", 100.0 * margin)
}

/// Writes the frequency response as CSV: `w_rad_s,magnitude_db,phase_deg,
/// regime`, LF line endings, no timestamps. The regime column is filled
/// from the slope segmentation when the sweep is wide enough to support
/// one and left empty otherwise.
pub fn write_bode_csv(
    path: &Path,
    tf: &RationalTransferFunction,
    sweep: &SweepRange,
    target: &RenderTarget,
) -> Result<usize> {
    let samples = bode(tf, sweep.wmin, sweep.wmax, sweep.points_per_decade)?;
    let segmentation = segment_regimes(&samples, target).ok();

    let mut out = String::from("w_rad_s,magnitude_db,phase_deg,regime\n");
    for s in &samples {
        let regime = segmentation
            .as_ref()
            .map(|seg| seg.label_at(s.w))
            .unwrap_or("");
        out.push_str(&format!(
            "{},{},{},{regime}\n",
            sig17(s.w),
            sig17(s.magnitude_db),
            sig17(s.phase_deg),
        ));
    }
    fs::write(path, &out).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(samples.len())
}
