//! Published design guidelines for passive SEA impedance rendering, and
//! the exact conditions, behind one interface so they can be compared on
//! equal footing.
//!
//! The two prior guidelines are implemented exactly as published, with no
//! reinterpretation of their degenerate cases. Both are sufficient
//! conditions; the exact guideline is necessary and sufficient, so any
//! configuration a prior guideline accepts should also pass the exact
//! check, while the converse can fail.

use serde::Serialize;

use crate::error::Result;
use crate::model::{ControllerGains, PlantParams, RenderTarget};
use crate::passivity::{check_closed_form, Condition};

use super::{bounds_report, kd_max, Constraint, StiffnessBound};

/// Outcome of one inequality inside a guideline.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GuidelineCondition {
    /// What the inequality constrains, in words.
    pub description: String,
    /// Whether the inequality holds.
    pub passed: bool,
    /// Relative slack `(bound - actual) / bound` where a finite bound
    /// exists.
    pub margin: Option<f64>,
}

impl GuidelineCondition {
    fn new(description: &str, passed: bool, margin: Option<f64>) -> Self {
        GuidelineCondition {
            description: description.to_string(),
            passed,
            margin,
        }
    }

    /// Condition of the form `actual < bound`, strict, with a relative
    /// margin whenever the bound is finite and positive.
    fn upper(description: &str, actual: f64, bound: f64) -> Self {
        let margin = (bound.is_finite() && bound > 0.0).then(|| (bound - actual) / bound);
        GuidelineCondition::new(description, actual < bound, margin)
    }
}

/// Verdict of one guideline on one operating point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GuidelineVerdict {
    /// Guideline name, as in [`guidelines`].
    pub guideline: &'static str,
    /// Whether every condition holds.
    pub passed: bool,
    /// The individual conditions.
    pub conditions: Vec<GuidelineCondition>,
}

impl GuidelineVerdict {
    fn from_conditions(guideline: &'static str, conditions: Vec<GuidelineCondition>) -> Self {
        GuidelineVerdict {
            guideline,
            passed: conditions.iter().all(|c| c.passed),
            conditions,
        }
    }
}

/// A rule for judging whether a design renders passively.
pub trait DesignGuideline: Sync {
    /// Stable identifier, usable on a command line.
    fn name(&self) -> &'static str;

    /// Evaluates the guideline's conditions at one operating point.
    fn evaluate(
        &self,
        plant: &PlantParams,
        gains: &ControllerGains,
        target: &RenderTarget,
    ) -> Result<GuidelineVerdict>;
}

/// Gain-ratio guideline: motor-side proportional gain dominates the load
/// inertia and both integral gains are dominated by their proportional
/// partners. For springs, the stiffness stays below the limit computed
/// for an undamped motor, which overestimates the renderable range when
/// real damping is present.
pub struct ValleryGuideline;

impl DesignGuideline for ValleryGuideline {
    fn name(&self) -> &'static str {
        "vallery"
    }

    fn evaluate(
        &self,
        plant: &PlantParams,
        gains: &ControllerGains,
        target: &RenderTarget,
    ) -> Result<GuidelineVerdict> {
        let mut conditions = vec![
            GuidelineCondition::upper("load inertia below velocity gain", plant.j, gains.pm),
            GuidelineCondition::upper(
                "velocity integral gain below half the velocity gain",
                gains.im,
                gains.pm / 2.0,
            ),
            GuidelineCondition::upper(
                "torque integral gain below half the torque gain",
                gains.it,
                gains.pt / 2.0,
            ),
        ];
        if let RenderTarget::Spring { kd } = target {
            let undamped = PlantParams {
                b: 0.0,
                ..*plant
            };
            conditions.push(stiffness_condition(
                "virtual stiffness below the undamped renderable limit",
                *kd,
                kd_max(&undamped, gains),
            ));
        }
        Ok(GuidelineVerdict::from_conditions(
            self.name(),
            conditions,
        ))
    }
}

/// Bound-form guideline: inertia below `(Pm+b)PmPt/(PmIt+PtIm)` and
/// damping below `PtIm/It`, with the stiffness below the renderable
/// limit for springs. The inertia bound is the exact one with the
/// `1 + PmPt` factor replaced by `PmPt`, so it is conservative by the
/// ratio `(1 + PmPt)/(PmPt)`.
pub struct AccotoGuideline;

impl DesignGuideline for AccotoGuideline {
    fn name(&self) -> &'static str {
        "accoto"
    }

    fn evaluate(
        &self,
        plant: &PlantParams,
        gains: &ControllerGains,
        target: &RenderTarget,
    ) -> Result<GuidelineVerdict> {
        let alpha = gains.pm * gains.it + gains.pt * gains.im;
        // As published. IEEE division by zero makes the degenerate cases
        // permissive (alpha = 0 or It = 0 give an infinite bound), which
        // keeps the sufficiency property intact.
        let j_bound = (gains.pm + plant.b) * gains.pm * gains.pt / alpha;
        let b_bound = gains.pt * gains.im / gains.it;
        let mut conditions = vec![
            GuidelineCondition::upper("load inertia below the reduced bound", plant.j, j_bound),
            GuidelineCondition::upper("motor damping below the damping bound", plant.b, b_bound),
        ];
        if let RenderTarget::Spring { kd } = target {
            conditions.push(stiffness_condition(
                "virtual stiffness below the renderable limit",
                *kd,
                kd_max(plant, gains),
            ));
        }
        Ok(GuidelineVerdict::from_conditions(
            self.name(),
            conditions,
        ))
    }
}

/// The necessary and sufficient conditions, reported in the same shape as
/// the heuristics so all three can sit in one table.
pub struct ExactGuideline;

impl DesignGuideline for ExactGuideline {
    fn name(&self) -> &'static str {
        "exact"
    }

    fn evaluate(
        &self,
        plant: &PlantParams,
        gains: &ControllerGains,
        target: &RenderTarget,
    ) -> Result<GuidelineVerdict> {
        let verdict = check_closed_form(plant, gains, target);
        let report = bounds_report(plant, gains, target)?;
        let conditions = report
            .margins
            .iter()
            .map(|cm| {
                let (description, condition) = match cm.constraint {
                    Constraint::Damping => {
                        ("motor damping below the damping bound", Condition::DampingBound)
                    }
                    Constraint::Inertia => {
                        ("load inertia below the inertia bound", Condition::InertiaBound)
                    }
                    Constraint::Stiffness => (
                        "virtual stiffness below the renderable limit",
                        Condition::StiffnessBound,
                    ),
                };
                GuidelineCondition::new(
                    description,
                    !verdict.failed_on(condition),
                    Some(cm.margin),
                )
            })
            .collect();
        Ok(GuidelineVerdict {
            guideline: self.name(),
            passed: verdict.passive,
            conditions,
        })
    }
}

fn stiffness_condition(description: &str, kd: f64, bound: StiffnessBound) -> GuidelineCondition {
    match bound {
        StiffnessBound::Limit(limit) => GuidelineCondition::upper(description, kd, limit),
        StiffnessBound::NonePositive => GuidelineCondition::new(description, false, None),
    }
}

static GUIDELINES: [&dyn DesignGuideline; 3] =
    [&ValleryGuideline, &AccotoGuideline, &ExactGuideline];

/// All registered guidelines, priors first, exact last.
pub fn guidelines() -> &'static [&'static dyn DesignGuideline] {
    &GUIDELINES
}

/// Looks a guideline up by its [`DesignGuideline::name`].
pub fn guideline_by_name(name: &str) -> Option<&'static dyn DesignGuideline> {
    GUIDELINES.iter().copied().find(|g| g.name() == name)
}

/// Evaluates every registered guideline at one operating point.
pub fn evaluate_prior_guidelines(
    plant: &PlantParams,
    gains: &ControllerGains,
    target: &RenderTarget,
) -> Result<Vec<GuidelineVerdict>> {
    GUIDELINES
        .iter()
        .map(|g| g.evaluate(plant, gains, target))
        .collect()
}
