//! Closed-form passivity conditions.
//!
//! Passivity of the rendered impedance is equivalent to a small set of
//! inequalities on the physical parameters: bounds on motor damping,
//! motor inertia, and (for spring rendering) virtual stiffness. Boundary
//! equalities matter: on each bound the system stays passive only if the
//! other bounds hold strictly, and simultaneous equality is unstable, so
//! the disjunct structure below is implemented exactly rather than as a
//! single conjunction of non-strict comparisons.

use super::verdict::{Condition, FailedCondition, PassivityVerdict, Route};
use crate::model::{ClosedFormCoefficients, ControllerGains, PlantParams, RenderTarget};

/// Relative width of the band around each decision boundary inside which a
/// verdict is flagged marginal.
pub const DEFAULT_BOUNDARY_BAND: f64 = 1e-6;

/// Passivity of the rendered impedance from parameter inequalities alone,
/// with the default boundary band.
pub fn check_closed_form(
    plant: &PlantParams,
    gains: &ControllerGains,
    target: &RenderTarget,
) -> PassivityVerdict {
    check_closed_form_with_band(plant, gains, target, DEFAULT_BOUNDARY_BAND)
}

/// Same as [`check_closed_form`] with an explicit boundary band: any
/// computed relative margin with magnitude at most `band` marks the
/// verdict marginal.
pub fn check_closed_form_with_band(
    plant: &PlantParams,
    gains: &ControllerGains,
    target: &RenderTarget,
    band: f64,
) -> PassivityVerdict {
    match target {
        RenderTarget::Null => null_verdict(plant, gains, band),
        // A zero-stiffness spring is the null target by definition.
        RenderTarget::Spring { kd } if *kd == 0.0 => null_verdict(plant, gains, band),
        RenderTarget::Spring { kd } => spring_verdict(plant, gains, *kd, band),
    }
}

fn null_verdict(plant: &PlantParams, gains: &ControllerGains, band: f64) -> PassivityVerdict {
    let c = ClosedFormCoefficients::compute(plant, gains, 0.0);
    let b = plant.b;
    let j = plant.j;

    // Both integrators off: the loop reduces to second order and is
    // passive for every positive plant.
    if gains.im == 0.0 && gains.it == 0.0 {
        return PassivityVerdict::passed(Route::ClosedForm, false);
    }

    let j_bound = (gains.pm + b) * (1.0 + gains.pm * gains.pt) / c.alpha;
    let m_j = (j_bound - j) / j_bound;
    let mut margins = vec![m_j];
    let mut failed = Vec::new();

    if gains.im == 0.0 {
        // Velocity integrator off: the damping condition vanishes, but the
        // inertia bound becomes strict because at equality the poles land
        // on the imaginary axis with complex residues.
        if m_j <= 0.0 {
            failed.push(inertia_failure(j, j_bound, m_j, true));
        }
    } else if gains.it == 0.0 {
        // Torque integrator off: no damping condition and a non-strict
        // inertia bound; at equality the real part degrades to a clean
        // quadratic that stays nonnegative.
        if m_j < 0.0 {
            failed.push(inertia_failure(j, j_bound, m_j, false));
        }
    } else {
        let b_bound = gains.pt * gains.im / gains.it;
        let m_b = (b_bound - b) / b_bound;
        margins.push(m_b);
        if m_b < 0.0 {
            failed.push(damping_failure(b, b_bound, m_b));
        }
        if m_j < 0.0 {
            failed.push(inertia_failure(j, j_bound, m_j, false));
        }
        if m_b == 0.0 && m_j == 0.0 {
            failed.push(simultaneous_boundary(Condition::DampingBound, b, b_bound));
            failed.push(simultaneous_boundary(Condition::InertiaBound, j, j_bound));
        }
    }

    finish(failed, &margins, band)
}

fn spring_verdict(
    plant: &PlantParams,
    gains: &ControllerGains,
    kd: f64,
    band: f64,
) -> PassivityVerdict {
    let c = ClosedFormCoefficients::compute(plant, gains, kd);
    let k = plant.k;

    if gains.im == 0.0 && gains.it == 0.0 {
        // Pure proportional cascade: the rendered spring is attenuated by
        // the loop gain and stays passive until the requested stiffness
        // reaches K (1 + Pm Pt) / (Pm Pt), well above the physical spring.
        let limit = k * (1.0 + gains.pm * gains.pt) / (gains.pm * gains.pt);
        let m = (limit - kd) / limit;
        let failed = if m < 0.0 {
            vec![FailedCondition {
                condition: Condition::StiffnessBound,
                description: format!(
                    "Kd = {kd} exceeds the proportional-cascade limit {limit} \
                     (real part goes negative at high frequency)"
                ),
                margin: Some(m),
            }]
        } else {
            Vec::new()
        };
        return finish(failed, &[m], band);
    }

    if gains.im == 0.0 {
        // Velocity integrator off with torque integrator on: the real part
        // is negative in a low-frequency band for every positive Kd, so no
        // virtual spring is passively renderable.
        return PassivityVerdict::failed(
            Route::ClosedForm,
            vec![FailedCondition {
                condition: Condition::StiffnessBound,
                description: format!(
                    "Im = 0 with It = {}: no positive virtual stiffness is passively \
                     renderable, requested Kd = {kd}",
                    gains.it
                ),
                margin: None,
            }],
            None,
            false,
        );
    }

    let mut margins = Vec::new();
    let mut failed = Vec::new();

    // Damping bound, strict for spring rendering in both disjuncts. The
    // bound is finite only with the torque integrator on; beta carries the
    // same sign information and also covers the It = 0 case.
    if gains.it > 0.0 {
        let b_bound = gains.pt * gains.im / gains.it;
        let m_b = (b_bound - plant.b) / b_bound;
        margins.push(m_b);
        if c.beta <= 0.0 {
            failed.push(damping_failure(plant.b, b_bound, m_b));
            failed.push(FailedCondition {
                condition: Condition::StiffnessBound,
                description: "maximum renderable stiffness is not positive at this damping"
                    .to_string(),
                margin: None,
            });
            return finish(failed, &margins, band);
        }
    }

    // beta > 0 from here on.
    let kd_bound = k * c.beta / (c.beta + c.alpha * k);
    let m_kd = (kd_bound - kd) / kd_bound;
    margins.push(m_kd);

    let mut m_j = None;
    if kd < k {
        let j_bound = (gains.pm + plant.b) * (c.delta_k * gains.pm * gains.pt + k)
            / (c.alpha * c.delta_k);
        let m = (j_bound - plant.j) / j_bound;
        margins.push(m);
        m_j = Some((m, j_bound));
    }

    if m_kd < 0.0 {
        failed.push(FailedCondition {
            condition: Condition::StiffnessBound,
            description: format!("Kd = {kd} exceeds the maximum renderable stiffness {kd_bound}"),
            margin: Some(m_kd),
        });
    }
    if let Some((m, j_bound)) = m_j {
        if m < 0.0 {
            failed.push(inertia_failure(plant.j, j_bound, m, false));
        }
        if m_kd == 0.0 && m == 0.0 {
            failed.push(simultaneous_boundary(Condition::StiffnessBound, kd, kd_bound));
            failed.push(simultaneous_boundary(Condition::InertiaBound, plant.j, j_bound));
        }
    }

    finish(failed, &margins, band)
}

fn finish(failed: Vec<FailedCondition>, margins: &[f64], band: f64) -> PassivityVerdict {
    let marginal = margins.iter().any(|m| m.abs() <= band);
    if failed.is_empty() {
        PassivityVerdict::passed(Route::ClosedForm, marginal)
    } else {
        PassivityVerdict::failed(Route::ClosedForm, failed, None, marginal)
    }
}

fn damping_failure(b: f64, bound: f64, margin: f64) -> FailedCondition {
    FailedCondition {
        condition: Condition::DampingBound,
        description: format!("b_max = {bound} < b = {b}"),
        margin: Some(margin),
    }
}

fn inertia_failure(j: f64, bound: f64, margin: f64, strict: bool) -> FailedCondition {
    let relation = if strict && margin == 0.0 {
        "is not strictly below"
    } else {
        "exceeds"
    };
    FailedCondition {
        condition: Condition::InertiaBound,
        description: format!("J = {j} {relation} J_max = {bound}"),
        margin: Some(margin),
    }
}

fn simultaneous_boundary(condition: Condition, actual: f64, bound: f64) -> FailedCondition {
    FailedCondition {
        condition,
        description: format!(
            "exactly on the bound ({actual} = {bound}) while another bound is also at \
             equality; simultaneous boundary equality is unstable"
        ),
        margin: Some(0.0),
    }
}
