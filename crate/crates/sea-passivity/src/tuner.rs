//! Rule-based gain recommendation with explicit passivity margins.
//!
//! The tuner turns the qualitative design guidance (aggressive velocity
//! loop, torque integral action limited by motor damping, stiffness
//! coverage driven by the velocity integral gain) into concrete gains by
//! working the closed-form bounds backwards with a uniform relative
//! safety margin. It is deliberately not an optimizer: every step is a
//! named rule, and the returned trace records each decision so a reported
//! gain set can be audited line by line.

use serde::{Deserialize, Serialize};

use crate::bounds::{j_max_null, j_max_spring, Bound};
use crate::error::{Error, Result};
use crate::model::{ControllerGains, PlantParams, RenderTarget};
use crate::passivity::check_closed_form;

/// What the recommended gains must render passively.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum TuningTarget {
    /// Null impedance only.
    Null,
    /// A virtual spring of the given stiffness.
    Spring {
        #[serde(rename = "Kd")]
        kd: f64,
    },
    /// One gain set covering both null and spring rendering.
    Both {
        #[serde(rename = "Kd")]
        kd: f64,
    },
}

/// Inputs of a tuning run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TuningSpec {
    /// Rendering target(s) the gains must cover.
    pub target: TuningTarget,
    /// Relative slack kept on every binding bound, in (0, 1).
    pub safety_margin: f64,
    /// Velocity-loop proportional seed; defaults to `100 J`.
    #[serde(default)]
    pub pm_seed: Option<f64>,
    /// Velocity-loop integral seed; defaults to half the proportional
    /// seed.
    #[serde(default)]
    pub im_seed: Option<f64>,
    /// Frequency in rad/s where the low-frequency impedance asymptote
    /// should cross unity magnitude; sets the torque gain. Defaults to
    /// 10 rad/s.
    #[serde(default)]
    pub bandwidth_hint: Option<f64>,
}

impl TuningSpec {
    /// A spec with default seeds and bandwidth hint.
    pub fn new(target: TuningTarget, safety_margin: f64) -> Self {
        TuningSpec {
            target,
            safety_margin,
            pm_seed: None,
            im_seed: None,
            bandwidth_hint: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.safety_margin > 0.0 && self.safety_margin < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "safety margin must lie in (0, 1), got {}",
                self.safety_margin
            )));
        }
        for (name, seed) in [
            ("Pm seed", self.pm_seed),
            ("Im seed", self.im_seed),
            ("bandwidth hint", self.bandwidth_hint),
        ] {
            if let Some(v) = seed {
                if !(v.is_finite() && v > 0.0) {
                    return Err(Error::InvalidParameter(format!(
                        "{name} must be positive and finite, got {v}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Recommended gains plus the decision trail that produced them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TuningResult {
    /// Gains passing the closed-form check for every requested target.
    pub gains: ControllerGains,
    /// One line per rule applied, in order.
    pub trace: Vec<String>,
}

/// How often the velocity gain may be doubled before giving up on the
/// inertia bound.
const MAX_DOUBLINGS: u32 = 10;

/// Fraction of the damping-limited torque integral gain used for spring
/// rendering, where integral action erodes the renderable stiffness.
const SPRING_IT_FRACTION: f64 = 0.01;

/// Recommends controller gains for the requested target(s).
///
/// The procedure fixes the velocity loop at aggressive seeds, derives the
/// torque gain from the bandwidth hint, then spends the remaining freedom
/// differently per target: null rendering maximizes the torque integral
/// gain inside the damping and inertia bounds, spring rendering raises
/// the velocity integral gain until the renderable stiffness covers the
/// request and keeps the torque integral gain small. Every binding bound
/// ends up with relative slack of at least the safety margin.
pub fn tune(plant: &PlantParams, spec: &TuningSpec) -> Result<TuningResult> {
    plant.validate()?;
    spec.validate()?;

    let m = spec.safety_margin;
    let pm_seed = spec.pm_seed.unwrap_or(100.0 * plant.j);
    let im_seed = spec.im_seed.unwrap_or(0.5 * pm_seed);
    let hint = spec.bandwidth_hint.unwrap_or(10.0);

    let mut trace = vec![
        format!(
            "velocity loop seeded aggressively: Pm = {pm_seed}, Im = {im_seed}"
        ),
        format!(
            "uniform relative safety margin {m} on every binding bound; the mapping \
             from qualitative guidance to these formulas is a choice of this tuner, \
             not a derived bound"
        ),
    ];

    let gains = match spec.target {
        TuningTarget::Null => tune_null(plant, m, pm_seed, im_seed, hint, &mut trace)?,
        TuningTarget::Spring { kd } => {
            tune_spring(plant, kd, m, pm_seed, im_seed, hint, false, &mut trace)?
        }
        TuningTarget::Both { kd } => {
            tune_spring(plant, kd, m, pm_seed, im_seed, hint, true, &mut trace)?
        }
    };

    for target in requested_targets(&spec.target) {
        let verdict = check_closed_form(plant, &gains, &target);
        if !verdict.passive {
            return Err(Error::Infeasible(format!(
                "tuned gains failed the closed-form check for {target:?}; \
                 this configuration cannot meet the requested margin"
            )));
        }
    }
    trace.push("closed-form passivity verified for every requested target".into());

    Ok(TuningResult { gains, trace })
}

fn requested_targets(target: &TuningTarget) -> Vec<RenderTarget> {
    match target {
        TuningTarget::Null => vec![RenderTarget::Null],
        TuningTarget::Spring { kd } => vec![RenderTarget::Spring { kd: *kd }],
        TuningTarget::Both { kd } => {
            vec![RenderTarget::Null, RenderTarget::Spring { kd: *kd }]
        }
    }
}

/// Torque gain from the bandwidth hint: the low-frequency null impedance
/// follows an inertia line of effective inertia `1/It`, which crosses
/// unity magnitude at `w = It`. Choosing `Pt` so the damping-limited
/// torque integral gain equals the hint puts that crossing on the hint.
fn torque_gain(b: f64, m: f64, im: f64, hint: f64, trace: &mut Vec<String>) -> f64 {
    if b > 0.0 {
        let pt = hint * b / ((1.0 - m) * im);
        trace.push(format!(
            "torque gain Pt = {pt} places the unity crossing of the low-frequency \
             inertia asymptote at {hint} rad/s"
        ));
        pt
    } else {
        trace.push(
            "undamped motor: the damping bound vanishes and the bandwidth hint has \
             no damping to work against; torque gain defaults to Pt = 1"
                .into(),
        );
        1.0
    }
}

fn tune_null(
    plant: &PlantParams,
    m: f64,
    pm_seed: f64,
    im: f64,
    hint: f64,
    trace: &mut Vec<String>,
) -> Result<ControllerGains> {
    let b = plant.b;
    let mut pm = pm_seed;

    for attempt in 0..=MAX_DOUBLINGS {
        let pt = torque_gain(b, m, im, hint, trace);
        let it_damping = if b > 0.0 {
            (1.0 - m) * pt * im / b
        } else {
            f64::INFINITY
        };
        // Largest torque integral gain keeping the inertia bound at the
        // requested slack.
        let it_inertia =
            ((1.0 - m) * (pm + b) * (1.0 + pm * pt) / plant.j - pt * im) / pm;

        let it = it_damping.min(it_inertia);
        if it > 0.0 {
            if it_damping <= it_inertia {
                trace.push(format!(
                    "torque integral gain It = {it} takes the full damping-bound \
                     slack (1 - margin) of Pt Im / b"
                ));
            } else {
                trace.push(format!(
                    "torque integral gain It = {it} limited by the inertia bound \
                     rather than the damping bound"
                ));
            }
            return ControllerGains::new(pm, im, pt, it);
        }

        if attempt == MAX_DOUBLINGS {
            break;
        }
        pm *= 2.0;
        trace.push(format!(
            "inertia bound unmet even without torque integral action; velocity \
             gain doubled to Pm = {pm}"
        ));
    }

    Err(Error::Infeasible(format!(
        "load inertia J = {} exceeds the inertia bound at the requested margin \
         even after raising the velocity gain to {pm}",
        plant.j
    )))
}

#[allow(clippy::too_many_arguments)]
fn tune_spring(
    plant: &PlantParams,
    kd: f64,
    m: f64,
    pm_seed: f64,
    im_seed: f64,
    hint: f64,
    also_null: bool,
    trace: &mut Vec<String>,
) -> Result<ControllerGains> {
    if !(kd.is_finite() && kd > 0.0) {
        return Err(Error::InvalidTarget(format!(
            "spring tuning needs a positive finite stiffness, got {kd}"
        )));
    }
    let (b, k) = (plant.b, plant.k);
    // The renderable stiffness must cover the request with margin, and it
    // is itself capped strictly below the physical stiffness.
    let q = kd / (1.0 - m);
    if q >= k {
        return Err(Error::Infeasible(format!(
            "Kd = {kd} with margin {m} needs a renderable stiffness of {q}, but \
             the renderable stiffness always stays strictly below the physical \
             stiffness K = {k}"
        )));
    }

    let spring_share = 1.0 - SPRING_IT_FRACTION * (1.0 - m);
    let mut pm = pm_seed;
    for attempt in 0..=MAX_DOUBLINGS {
        // Smallest velocity integral gain making the renderable stiffness
        // reach q, given that It stays at its small spring-mode fraction.
        // Both sides of that bound scale the same way with Im, so the
        // requirement is a closed-form constant in Pm.
        let im_required = if b > 0.0 {
            q * k * (SPRING_IT_FRACTION * (1.0 - m) * pm / b + 1.0)
                / ((k - q) * spring_share)
        } else {
            q * k * (SPRING_IT_FRACTION * pm + 1.0) / (k - q)
        };
        let im = im_seed.max(im_required);
        let pt = torque_gain(b, m, im, hint, trace);
        let it = if b > 0.0 {
            SPRING_IT_FRACTION * (1.0 - m) * pt * im / b
        } else {
            SPRING_IT_FRACTION * pt * im
        };
        if im_required > im_seed {
            trace.push(format!(
                "velocity integral gain raised to Im = {im} so the renderable \
                 stiffness covers Kd = {kd} at the requested margin"
            ));
        } else {
            trace.push(format!(
                "velocity integral seed Im = {im} already covers Kd = {kd} at the \
                 requested margin"
            ));
        }
        trace.push(format!(
            "torque integral gain kept small, It = {it} (one percent of the \
             damping-limited value), to preserve the stiffness range"
        ));

        let gains = ControllerGains::new(pm, im, pt, it)?;
        let spring_ok = match j_max_spring(b, &gains, k, kd)? {
            Bound::Finite(bound) => plant.j <= (1.0 - m) * bound,
            Bound::Unbounded => true,
        };
        let null_ok = !also_null
            || match j_max_null(b, &gains) {
                Bound::Finite(bound) => plant.j <= (1.0 - m) * bound,
                Bound::Unbounded => true,
            };
        if spring_ok && null_ok {
            return Ok(gains);
        }

        if attempt == MAX_DOUBLINGS {
            break;
        }
        pm *= 2.0;
        trace.push(format!(
            "inertia bound unmet at this tuning; velocity gain doubled to Pm = {pm}"
        ));
    }

    Err(Error::Infeasible(format!(
        "load inertia J = {} exceeds the spring-mode inertia bound at the \
         requested margin even after raising the velocity gain to {pm}",
        plant.j
    )))
}
