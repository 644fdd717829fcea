//! Randomized cross-validation of the two passivity routes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::closed_form::{check_closed_form_with_band, DEFAULT_BOUNDARY_BAND};
use super::numeric::check_numeric;
use super::verdict::PassivityVerdict;
use crate::error::Result;
use crate::model::{build_impedance, ControllerGains, PlantParams, RenderTarget};

/// Which rendering target the sweep draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepTargetKind {
    /// Null rendering for every sample.
    Null,
    /// Spring rendering with `Kd` drawn uniformly from `[0, 2K]`, which
    /// deliberately includes stiffnesses beyond every renderable bound.
    Spring,
}

/// Configuration of an agreement sweep.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    /// Number of samples to draw.
    pub samples: usize,
    /// Seed for the deterministic sample stream.
    pub seed: u64,
    /// Rendering target family.
    pub target: SweepTargetKind,
    /// Log-uniform range for the plant parameters `J`, `b`, `K`.
    pub plant_range: (f64, f64),
    /// Log-uniform range for the controller gains.
    pub gain_range: (f64, f64),
    /// Relative margin band treated as boundary (samples inside it are
    /// excluded from the agreement count).
    pub boundary_band: f64,
}

impl SweepConfig {
    /// Standard sweep over the documented parameter ranges.
    pub fn new(target: SweepTargetKind, samples: usize, seed: u64) -> Self {
        SweepConfig {
            samples,
            seed,
            target,
            plant_range: (1e-2, 1e3),
            gain_range: (1e-2, 1e3),
            boundary_band: DEFAULT_BOUNDARY_BAND,
        }
    }

    /// Materializes the full deterministic sample stream of this sweep.
    ///
    /// [`agreement_sweep`] draws exactly this sequence, so other analyses
    /// (guideline comparisons, phase-bound audits) can run over the
    /// identical sample set by calling this directly.
    pub fn configurations(&self) -> Vec<(PlantParams, ControllerGains, RenderTarget)> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        (0..self.samples)
            .map(|_| draw_sample(&mut rng, self))
            .collect()
    }
}

/// One sample on which the routes disagreed.
#[derive(Debug, Clone)]
pub struct Disagreement {
    /// Index in the sample stream, for reproduction.
    pub index: usize,
    /// Plant drawn for this sample.
    pub plant: PlantParams,
    /// Gains drawn for this sample.
    pub gains: ControllerGains,
    /// Target drawn for this sample.
    pub target: RenderTarget,
    /// Closed-form verdict.
    pub closed: PassivityVerdict,
    /// Numeric verdict.
    pub numeric: PassivityVerdict,
}

/// Outcome of an agreement sweep.
#[derive(Debug, Clone)]
pub struct SweepReport {
    /// Samples drawn in total.
    pub samples: usize,
    /// Samples excluded because a closed-form margin fell inside the
    /// boundary band.
    pub excluded_marginal: usize,
    /// Non-marginal samples where the routes disagreed; empty on a healthy
    /// build.
    pub disagreements: Vec<Disagreement>,
}

/// Runs both passivity routes over a deterministic random parameter stream
/// and collects every non-marginal disagreement.
///
/// Samples whose closed-form margins sit inside the boundary band are
/// excluded: on the boundary the two routes legitimately read different
/// sides of the same coin flip, and the band quantifies "on".
pub fn agreement_sweep(config: &SweepConfig) -> Result<SweepReport> {
    let mut excluded = 0;
    let mut disagreements = Vec::new();

    for (index, (plant, gains, target)) in config.configurations().into_iter().enumerate() {
        let closed = check_closed_form_with_band(&plant, &gains, &target, config.boundary_band);
        if closed.marginal {
            excluded += 1;
            continue;
        }
        let tf = build_impedance(&plant, &gains, &target)?;
        let numeric = check_numeric(&tf)?;
        if closed.passive != numeric.passive {
            disagreements.push(Disagreement {
                index,
                plant,
                gains,
                target,
                closed,
                numeric,
            });
        }
    }

    Ok(SweepReport {
        samples: config.samples,
        excluded_marginal: excluded,
        disagreements,
    })
}

/// Draws one (plant, gains, target) tuple. The draw order is part of the
/// reproducibility contract: J, b, K, Pm, Im, Pt, It, then Kd for spring
/// sweeps.
fn draw_sample(
    rng: &mut ChaCha8Rng,
    config: &SweepConfig,
) -> (PlantParams, ControllerGains, RenderTarget) {
    let lu = |rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)| -> f64 {
        let u: f64 = rng.random_range(lo.ln()..hi.ln());
        u.exp()
    };
    let j = lu(rng, config.plant_range);
    let b = lu(rng, config.plant_range);
    let k = lu(rng, config.plant_range);
    let pm = lu(rng, config.gain_range);
    let im = lu(rng, config.gain_range);
    let pt = lu(rng, config.gain_range);
    let it = lu(rng, config.gain_range);
    let plant = PlantParams { j, b, k };
    let gains = ControllerGains { pm, im, pt, it };
    let target = match config.target {
        SweepTargetKind::Null => RenderTarget::Null,
        SweepTargetKind::Spring => RenderTarget::Spring {
            kd: rng.random_range(0.0..2.0 * k),
        },
    };
    (plant, gains, target)
}
