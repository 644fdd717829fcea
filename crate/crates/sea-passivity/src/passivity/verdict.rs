//! Verdict types shared by both passivity routes.

use std::fmt;

use serde::Serialize;

/// Which analysis route produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Parameter-space inequalities.
    ClosedForm,
    /// Frequency-domain conditions on the transfer function.
    Numeric,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Route::ClosedForm => write!(f, "closed-form"),
            Route::Numeric => write!(f, "numeric"),
        }
    }
}

/// The individual conditions a verdict can fail on.
///
/// The first three belong to the numeric route (the frequency-domain
/// passivity test); the last three are the parameter bounds of the
/// closed-form route.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// All poles in the open left half-plane (imaginary-axis exceptions
    /// are handled by the residue condition).
    StablePoles,
    /// Nonnegative real part along the imaginary axis.
    NonnegativeRealPart,
    /// Simple imaginary-axis poles with positive real residues.
    ImaginaryPoleResidues,
    /// Motor damping below its bound.
    DampingBound,
    /// Motor inertia below its bound.
    InertiaBound,
    /// Virtual stiffness below its bound.
    StiffnessBound,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Condition::StablePoles => "stable poles",
            Condition::NonnegativeRealPart => "nonnegative real part",
            Condition::ImaginaryPoleResidues => "imaginary-axis pole residues",
            Condition::DampingBound => "damping bound",
            Condition::InertiaBound => "inertia bound",
            Condition::StiffnessBound => "stiffness bound",
        };
        write!(f, "{name}")
    }
}

/// One failed condition with a human-readable explanation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FailedCondition {
    /// Which condition failed.
    pub condition: Condition,
    /// What happened, with the relevant numbers.
    pub description: String,
    /// Relative margin `(bound - actual) / bound` where one is defined;
    /// negative when violated.
    pub margin: Option<f64>,
}

/// Outcome of a passivity check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PassivityVerdict {
    /// The system is passive.
    pub passive: bool,
    /// Route that produced this verdict.
    pub route: Route,
    /// Conditions that failed; empty exactly when `passive`.
    pub failed_conditions: Vec<FailedCondition>,
    /// Frequency at which the real part goes negative, present iff the
    /// nonnegative-real-part condition failed on the numeric route.
    pub witness_frequency: Option<f64>,
    /// The verdict sits within tolerance of a decision boundary and should
    /// not be used as evidence for either side.
    pub marginal: bool,
}

impl PassivityVerdict {
    pub(crate) fn passed(route: Route, marginal: bool) -> Self {
        PassivityVerdict {
            passive: true,
            route,
            failed_conditions: Vec::new(),
            witness_frequency: None,
            marginal,
        }
    }

    pub(crate) fn failed(
        route: Route,
        failed_conditions: Vec<FailedCondition>,
        witness_frequency: Option<f64>,
        marginal: bool,
    ) -> Self {
        debug_assert!(!failed_conditions.is_empty());
        PassivityVerdict {
            passive: false,
            route,
            failed_conditions,
            witness_frequency,
            marginal,
        }
    }

    /// True when `condition` is among the failed conditions.
    pub fn failed_on(&self, condition: Condition) -> bool {
        self.failed_conditions
            .iter()
            .any(|f| f.condition == condition)
    }
}

impl fmt::Display for PassivityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let state = if self.passive { "passive" } else { "not passive" };
        write!(f, "{} ({} route)", state, self.route)?;
        if self.marginal {
            write!(f, " [marginal]")?;
        }
        for fc in &self.failed_conditions {
            write!(f, "\n  {}: {}", fc.condition, fc.description)?;
        }
        if let Some(w) = self.witness_frequency {
            write!(f, "\n  witness frequency: {w:.6e} rad/s")?;
        }
        Ok(())
    }
}
