//! Closed-form design bounds and prior-work guideline comparison.
//!
//! For a given controller tuning the passivity conditions translate into
//! explicit bounds: a maximum motor damping, a maximum motor inertia (one
//! for null rendering, a stiffness-dependent one for spring rendering),
//! and a maximum renderable virtual stiffness. Degenerate gain choices
//! make individual bounds vanish; those cases return explicit sentinel
//! variants rather than floating-point infinities so reports stay
//! unambiguous.

mod guidelines;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{ClosedFormCoefficients, ControllerGains, PlantParams, RenderTarget};

pub use guidelines::{
    evaluate_prior_guidelines, guideline_by_name, guidelines, AccotoGuideline, DesignGuideline,
    ExactGuideline, GuidelineCondition, GuidelineVerdict, ValleryGuideline,
};

/// An upper bound that may be absent when the constraining mechanism
/// vanishes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bound {
    /// Finite bound; strictly positive in every reachable configuration.
    Finite(f64),
    /// No constraint: the corresponding passivity condition holds for any
    /// value of the bounded parameter.
    Unbounded,
}

impl Bound {
    /// The finite value, if there is one.
    pub fn value(&self) -> Option<f64> {
        match self {
            Bound::Finite(v) => Some(*v),
            Bound::Unbounded => None,
        }
    }

    /// Relative margin of an actual value against this bound; `None` when
    /// unbounded.
    pub fn margin(&self, actual: f64) -> Option<f64> {
        self.value().map(|v| (v - actual) / v)
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(v) => write!(f, "{v}"),
            Bound::Unbounded => write!(f, "unbounded"),
        }
    }
}

impl Serialize for Bound {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        match self {
            Bound::Finite(v) => s.serialize_f64(*v),
            Bound::Unbounded => s.serialize_str("unbounded"),
        }
    }
}

/// The maximum renderable virtual stiffness, which can be absent in the
/// other direction: no positive stiffness at all.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StiffnessBound {
    /// Stiffnesses strictly below this render passively (given the other
    /// bounds); always strictly below the physical spring stiffness.
    Limit(f64),
    /// No positive virtual stiffness is passively renderable.
    NonePositive,
}

impl StiffnessBound {
    /// The finite limit, if one exists.
    pub fn value(&self) -> Option<f64> {
        match self {
            StiffnessBound::Limit(v) => Some(*v),
            StiffnessBound::NonePositive => None,
        }
    }
}

impl fmt::Display for StiffnessBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StiffnessBound::Limit(v) => write!(f, "{v}"),
            StiffnessBound::NonePositive => write!(f, "none"),
        }
    }
}

impl Serialize for StiffnessBound {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        match self {
            StiffnessBound::Limit(v) => s.serialize_f64(*v),
            StiffnessBound::NonePositive => s.serialize_str("none"),
        }
    }
}

/// Maximum motor damping for passive null rendering.
///
/// With the torque integrator off the direct dependence on damping
/// vanishes and the bound is absent. With the velocity integrator off the
/// damping term drops out of the real part entirely, so the bound is
/// absent there too; the formula's literal zero in that case bounds
/// nothing.
pub fn b_max(gains: &ControllerGains) -> Bound {
    if gains.it == 0.0 || gains.im == 0.0 {
        Bound::Unbounded
    } else {
        Bound::Finite(gains.pt * gains.im / gains.it)
    }
}

/// Maximum motor inertia for passive null rendering. Unbounded exactly
/// when both integral gains are zero.
pub fn j_max_null(b: f64, gains: &ControllerGains) -> Bound {
    let alpha = gains.pm * gains.it + gains.pt * gains.im;
    if alpha == 0.0 {
        Bound::Unbounded
    } else {
        Bound::Finite((gains.pm + b) * (1.0 + gains.pm * gains.pt) / alpha)
    }
}

/// Maximum renderable virtual stiffness.
///
/// Finite exactly when `beta = Im (Pt Im - b It)` is positive; in that
/// case it is strictly below the physical spring stiffness. With `Im = 0`
/// (and the torque integrator on) no positive stiffness renders passively.
/// Note the formula is derived under an active integral path; the doubly
/// degenerate `Im = It = 0` cascade escapes it and is treated separately
/// by the passivity check.
pub fn kd_max(plant: &PlantParams, gains: &ControllerGains) -> StiffnessBound {
    let c = ClosedFormCoefficients::compute(plant, gains, 0.0);
    if c.beta > 0.0 {
        StiffnessBound::Limit(plant.k * c.beta / (c.beta + c.alpha * plant.k))
    } else {
        StiffnessBound::NonePositive
    }
}

/// Maximum motor inertia for passive rendering of a spring of stiffness
/// `kd`. Requires `kd < K`; equals [`j_max_null`] at `kd = 0`.
pub fn j_max_spring(b: f64, gains: &ControllerGains, k: f64, kd: f64) -> Result<Bound> {
    if kd >= k {
        return Err(Error::InvalidTarget(format!(
            "virtual stiffness Kd = {kd} must be below the physical stiffness K = {k}"
        )));
    }
    let alpha = gains.pm * gains.it + gains.pt * gains.im;
    if alpha == 0.0 {
        return Ok(Bound::Unbounded);
    }
    let dk = k - kd;
    Ok(Bound::Finite(
        (gains.pm + b) * (dk * gains.pm * gains.pt + k) / (alpha * dk),
    ))
}

/// Identifier of what limits a design first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Constraint {
    /// Motor damping against [`b_max`].
    Damping,
    /// Motor inertia against the applicable inertia bound.
    Inertia,
    /// Virtual stiffness against [`kd_max`].
    Stiffness,
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::Damping => write!(f, "damping bound"),
            Constraint::Inertia => write!(f, "inertia bound"),
            Constraint::Stiffness => write!(f, "stiffness bound"),
        }
    }
}

/// Relative slack of one constraint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstraintMargin {
    /// Which constraint.
    pub constraint: Constraint,
    /// `(bound - actual) / bound`; negative when violated.
    pub margin: f64,
}

/// All bounds for one operating point, with margins and the binding
/// constraint.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    /// Damping bound.
    pub b_max: Bound,
    /// Inertia bound for the given target (null or spring form).
    pub j_max: Bound,
    /// Stiffness bound; only present for spring targets.
    pub kd_max: Option<StiffnessBound>,
    /// Constraint with the smallest margin; absent when no finite bound
    /// yields a margin. Ties break in the order damping, inertia,
    /// stiffness.
    pub binding: Option<Constraint>,
    /// Margins for every finite bound, in that same fixed order.
    pub margins: Vec<ConstraintMargin>,
}

/// Computes every applicable bound with margins for one operating point.
///
/// For spring targets the stiffness must lie below the physical spring
/// stiffness, otherwise the spring-form inertia bound is undefined and the
/// call fails with `InvalidTarget`.
pub fn bounds_report(
    plant: &PlantParams,
    gains: &ControllerGains,
    target: &RenderTarget,
) -> Result<BoundsReport> {
    let damping = b_max(gains);
    let (inertia, stiffness) = match target {
        RenderTarget::Null => (j_max_null(plant.b, gains), None),
        RenderTarget::Spring { kd } => (
            j_max_spring(plant.b, gains, plant.k, *kd)?,
            Some(kd_max(plant, gains)),
        ),
    };

    let mut margins = Vec::new();
    if let Some(m) = damping.margin(plant.b) {
        margins.push(ConstraintMargin {
            constraint: Constraint::Damping,
            margin: m,
        });
    }
    if let Some(m) = inertia.margin(plant.j) {
        margins.push(ConstraintMargin {
            constraint: Constraint::Inertia,
            margin: m,
        });
    }
    if let (Some(bound), RenderTarget::Spring { kd }) = (&stiffness, target) {
        let m = match bound {
            StiffnessBound::Limit(limit) => Some((limit - kd) / limit),
            // Fully violated by any positive request; report the request
            // itself as the (negative) slack direction.
            StiffnessBound::NonePositive => (*kd > 0.0).then_some(-1.0),
        };
        if let Some(m) = m {
            margins.push(ConstraintMargin {
                constraint: Constraint::Stiffness,
                margin: m,
            });
        }
    }

    // Smallest margin wins; the Vec order already encodes the tie-break
    // order, and a strict comparison keeps the earliest on ties.
    let binding = margins
        .iter()
        .fold(None::<&ConstraintMargin>, |best, cm| match best {
            Some(b) if b.margin <= cm.margin => Some(b),
            _ => Some(cm),
        })
        .map(|cm| cm.constraint);

    Ok(BoundsReport {
        b_max: damping,
        j_max: inertia,
        kd_max: stiffness,
        binding,
        margins,
    })
}
