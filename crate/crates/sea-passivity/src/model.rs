//! Actuator model and rendered output impedance.
//!
//! The modeled system is a series elastic actuator: a motor with inertia
//! `J` and viscous damping `b` drives the environment through a spring of
//! stiffness `K`. An inner PI loop controls motor velocity, an outer PI
//! loop controls spring torque, and the torque reference implements the
//! virtual behavior to render at the output: either nothing at all (null
//! impedance, the transparent case) or a virtual spring of stiffness `Kd`.
//!
//! The quantity everything downstream cares about is the output impedance
//! seen by the environment, torque over end-point velocity. This module
//! provides it twice: [`build_null_impedance`] / [`build_spring_impedance`]
//! write the known closed forms down directly, while
//! [`assemble_block_diagram`] closes the loops one at a time starting from
//! the motor dynamics. The two constructions must agree to rounding; tests
//! hold them to that.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyalg::{Polynomial, RationalTransferFunction};

/// Physical actuator parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlantParams {
    /// Motor-side inertia, reflected through the gearbox.
    #[serde(rename = "J")]
    pub j: f64,
    /// Motor-side viscous damping.
    #[serde(rename = "b")]
    pub b: f64,
    /// Spring stiffness of the elastic element.
    #[serde(rename = "K")]
    pub k: f64,
}

impl PlantParams {
    /// Builds a validated parameter set: `J > 0`, `K > 0`, `b >= 0`, all
    /// finite.
    pub fn new(j: f64, b: f64, k: f64) -> Result<Self> {
        let p = PlantParams { j, b, k };
        p.validate()?;
        Ok(p)
    }

    /// Checks the sign and finiteness invariants, naming the offending
    /// field in the error.
    pub fn validate(&self) -> Result<()> {
        require_finite("J", self.j)?;
        require_finite("b", self.b)?;
        require_finite("K", self.k)?;
        if self.j <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "J must be positive, got {}",
                self.j
            )));
        }
        if self.b < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "b must be nonnegative, got {}",
                self.b
            )));
        }
        if self.k <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "K must be positive, got {}",
                self.k
            )));
        }
        Ok(())
    }
}

/// Cascade controller gains: PI velocity loop (`Pm`, `Im`) inside a PI
/// torque loop (`Pt`, `It`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ControllerGains {
    /// Proportional gain of the velocity loop.
    #[serde(rename = "Pm")]
    pub pm: f64,
    /// Integral gain of the velocity loop.
    #[serde(rename = "Im")]
    pub im: f64,
    /// Proportional gain of the torque loop.
    #[serde(rename = "Pt")]
    pub pt: f64,
    /// Integral gain of the torque loop.
    #[serde(rename = "It")]
    pub it: f64,
}

impl ControllerGains {
    /// Builds a validated gain set: proportional gains positive, integral
    /// gains nonnegative, all finite.
    pub fn new(pm: f64, im: f64, pt: f64, it: f64) -> Result<Self> {
        let g = ControllerGains { pm, im, pt, it };
        g.validate()?;
        Ok(g)
    }

    /// Checks the sign and finiteness invariants, naming the offending
    /// field in the error.
    pub fn validate(&self) -> Result<()> {
        require_finite("Pm", self.pm)?;
        require_finite("Im", self.im)?;
        require_finite("Pt", self.pt)?;
        require_finite("It", self.it)?;
        if self.pm <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "Pm must be positive, got {}",
                self.pm
            )));
        }
        if self.pt <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "Pt must be positive, got {}",
                self.pt
            )));
        }
        if self.im < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "Im must be nonnegative, got {}",
                self.im
            )));
        }
        if self.it < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "It must be nonnegative, got {}",
                self.it
            )));
        }
        Ok(())
    }
}

fn require_finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be finite, got {v}")))
    }
}

/// What the controller renders at the output.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum RenderTarget {
    /// Zero impedance: the actuator should feel like nothing.
    Null,
    /// A virtual spring of stiffness `Kd`.
    Spring {
        /// Desired virtual stiffness.
        #[serde(rename = "Kd")]
        kd: f64,
    },
}

impl RenderTarget {
    /// Virtual stiffness of the target, zero for null rendering.
    pub fn stiffness(&self) -> f64 {
        match self {
            RenderTarget::Null => 0.0,
            RenderTarget::Spring { kd } => *kd,
        }
    }

    /// Checks that a spring target has finite nonnegative stiffness.
    pub fn validate(&self) -> Result<()> {
        if let RenderTarget::Spring { kd } = self {
            require_finite("Kd", *kd)?;
            if *kd < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "Kd must be nonnegative, got {kd}"
                )));
            }
        }
        Ok(())
    }
}

/// The recurring parameter combinations of the closed-form analysis.
///
/// Every inequality in the closed-form passivity conditions and every
/// parameter bound is expressed in terms of a handful of products of plant
/// and controller parameters. Collecting them in one place keeps the two
/// analysis routes honest about using identical definitions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormCoefficients {
    /// `Pm It + Pt Im`, the cross coupling of proportional and integral
    /// action across the two loops.
    pub alpha: f64,
    /// `K Pm Pt + Im`, the stiffness-scaled proportional product.
    pub gamma: f64,
    /// `Pm Pt Kd + Im`, the same with the virtual stiffness in place of
    /// the physical one.
    pub delta: f64,
    /// `Im (Pt Im - b It)`; positive exactly when the damping bound holds.
    pub beta: f64,
    /// `Pm^2 Pt + Pm Pt b - J alpha`, the inertia-corrected proportional
    /// term of the spring analysis.
    pub eta: f64,
    /// Stiffness headroom `K - Kd`.
    pub delta_k: f64,
    /// Stability discriminant of the rendered-impedance denominator; the
    /// denominator is Hurwitz exactly when this is positive.
    pub xi: f64,
    /// Quadratic coefficient of the real-part numerator for null
    /// rendering.
    pub d2: f64,
    /// Quartic coefficient of the real-part numerator for null rendering.
    pub d4: f64,
    /// Quartic coefficient of the real-part numerator for spring
    /// rendering.
    pub d4s: f64,
    /// Sextic coefficient of the real-part numerator for spring rendering.
    pub d6: f64,
}

impl ClosedFormCoefficients {
    /// Evaluates all combinations for one operating point. `kd` is the
    /// virtual stiffness, zero for null rendering.
    pub fn compute(plant: &PlantParams, gains: &ControllerGains, kd: f64) -> Self {
        let PlantParams { j, b, k } = *plant;
        let ControllerGains { pm, im, pt, it } = *gains;

        let alpha = pm * it + pt * im;
        let gamma = k * pm * pt + im;
        let delta = pm * pt * kd + im;
        let beta = im * (pt * im - b * it);
        let eta = pm * pm * pt + pm * pt * b - j * alpha;
        let delta_k = k - kd;
        let xi = k
            * (alpha * (pm + b) * (k + gamma)
                - im * it * (pm + b) * (pm + b)
                - j * k * alpha * alpha);
        let d2 = k * k * im * (pt * im - b * it);
        let d4 = k * k * ((pm + b) * (1.0 + pm * pt) - j * alpha);
        let d4s = k * (delta_k * beta - alpha * k * kd);
        let d6 = k * (delta_k * eta + k * (pm + b));

        ClosedFormCoefficients {
            alpha,
            gamma,
            delta,
            beta,
            eta,
            delta_k,
            xi,
            d2,
            d4,
            d4s,
            d6,
        }
    }
}

/// Output impedance for null rendering, written down in closed form.
///
/// The numerator is `K s (J s^2 + (Pm + b) s + Im)` and the denominator is
/// the quartic `J s^4 + (Pm + b) s^3 + (K + gamma) s^2 + alpha K s +
/// K Im It`. When integral gains vanish, shared factors of `s` cancel and
/// the order drops accordingly.
pub fn build_null_impedance(
    plant: &PlantParams,
    gains: &ControllerGains,
) -> Result<RationalTransferFunction> {
    let PlantParams { j, b, k } = *plant;
    let (pm, im, it) = (gains.pm, gains.im, gains.it);
    let c = ClosedFormCoefficients::compute(plant, gains, 0.0);

    let num = Polynomial::new([0.0, k * im, k * (pm + b), k * j]);
    let den = Polynomial::new([
        k * im * it,
        c.alpha * k,
        k + c.gamma,
        pm + b,
        j,
    ]);
    RationalTransferFunction::new(num, den)
}

/// Output impedance for spring rendering, written down in closed form.
///
/// The denominator gains a factor of `s` relative to null rendering (the
/// rendered spring integrates velocity), and the numerator becomes the
/// quartic `K (J s^4 + (Pm + b) s^3 + delta s^2 + alpha Kd s +
/// Kd Im It)`. Setting `Kd = 0` reproduces the null impedance exactly.
pub fn build_spring_impedance(
    plant: &PlantParams,
    gains: &ControllerGains,
    kd: f64,
) -> Result<RationalTransferFunction> {
    let PlantParams { j, b, k } = *plant;
    let (pm, im, it) = (gains.pm, gains.im, gains.it);
    let c = ClosedFormCoefficients::compute(plant, gains, kd);

    let num = Polynomial::new([
        k * kd * im * it,
        k * c.alpha * kd,
        k * c.delta,
        k * (pm + b),
        k * j,
    ]);
    let den = Polynomial::new([
        0.0,
        k * im * it,
        c.alpha * k,
        k + c.gamma,
        pm + b,
        j,
    ]);
    RationalTransferFunction::new(num, den)
}

/// Output impedance for either target, dispatched on the render target.
pub fn build_impedance(
    plant: &PlantParams,
    gains: &ControllerGains,
    target: &RenderTarget,
) -> Result<RationalTransferFunction> {
    match target {
        RenderTarget::Null => build_null_impedance(plant, gains),
        RenderTarget::Spring { kd } => build_spring_impedance(plant, gains, *kd),
    }
}

/// Output impedance derived by closing the loops of the block diagram one
/// at a time, with no reference to the precomputed closed forms.
///
/// Signal conventions: the spring torque loads the motor (`(Js + b) w_m =
/// tau_m - tau_sea`), the torque loop output is the velocity reference,
/// and the torque reference is the virtual impedance acting on end-point
/// motion, with the sign chosen so a positive `Kd` renders a restoring
/// spring. The derivation proceeds in three stages:
///
/// 1. close the velocity PI around the motor,
/// 2. close the torque PI through the spring, expressing the spring torque
///    in terms of torque reference and end-point position,
/// 3. substitute the virtual-impedance law for the torque reference and
///    read off torque over end-point velocity.
///
/// This exists to cross-check the closed forms: agreement between the two
/// constructions is asserted to high precision in the test suite.
pub fn assemble_block_diagram(
    plant: &PlantParams,
    gains: &ControllerGains,
    target: &RenderTarget,
) -> Result<RationalTransferFunction> {
    let PlantParams { j, b, k } = *plant;
    let ControllerGains { pm, im, pt, it } = *gains;

    let s = Polynomial::term(1.0, 1);

    // PI controllers as numerators over s.
    let cv_num = Polynomial::new([im, pm]);
    let ct_num = Polynomial::new([it, pt]);

    // Stage 1: velocity loop around the motor. From
    //   (J s + b) w_m = C_v (w_ref - w_m) - tau_sea
    // multiply through by s:
    //   V(s) w_m = cv_num w_ref - s tau_sea,  V(s) = J s^2 + (Pm + b) s + Im.
    let motor = Polynomial::new([b, j]);
    let v = &(&s * &motor) + &cv_num;

    // Stage 2: torque loop through the spring. With theta_m = w_m / s and
    // w_ref = ct_num (tau_ref - tau_sea) / s, the spring law
    // tau_sea = K (theta_m - theta_end) collapses to
    //   tau_sea D(s) = K ct_num cv_num tau_ref - K s^2 V(s) theta_end,
    //   D(s) = s^2 V(s) + K s^2 + K cv_num ct_num.
    let loop_den = &(&(&s * &s) * &v) + &(&Polynomial::term(k, 2) + &(&cv_num * &ct_num).scaled(k));

    // Stage 3: virtual impedance supplies the torque reference from
    // end-point motion, tau_ref = -(zd_num / zd_den) s theta_end, and the
    // output impedance is -tau_sea / (s theta_end).
    let (zd_num, zd_den) = match target {
        RenderTarget::Null => (Polynomial::zero(), Polynomial::constant(1.0)),
        RenderTarget::Spring { kd } => (Polynomial::constant(*kd), s.clone()),
    };

    let num = (&(&(&cv_num * &ct_num) * &zd_num) + &(&(&s * &v) * &zd_den)).scaled(k);
    let den = &zd_den * &loop_den;
    RationalTransferFunction::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_complex::Complex64;

    fn reference_plant() -> PlantParams {
        PlantParams::new(0.2, 3.0, 250.0).unwrap()
    }

    fn reference_null_gains() -> ControllerGains {
        ControllerGains::new(20.0, 10.0, 5.0, 5.0).unwrap()
    }

    fn reference_spring_gains() -> ControllerGains {
        ControllerGains::new(20.0, 100.0, 30.0, 5.0).unwrap()
    }

    #[test]
    fn validation_rejects_bad_parameters() {
        assert!(PlantParams::new(0.0, 0.0, 250.0).is_err());
        assert!(PlantParams::new(0.2, -1.0, 250.0).is_err());
        assert!(PlantParams::new(0.2, 0.0, f64::NAN).is_err());
        assert!(ControllerGains::new(0.0, 0.0, 5.0, 5.0).is_err());
        assert!(ControllerGains::new(20.0, -1.0, 5.0, 5.0).is_err());
        assert!(RenderTarget::Spring { kd: -2.0 }.validate().is_err());
        assert!(RenderTarget::Spring { kd: 50.0 }.validate().is_ok());
    }

    #[test]
    fn closed_form_coefficients_at_reference_points() {
        let c = ClosedFormCoefficients::compute(&reference_plant(), &reference_null_gains(), 0.0);
        assert_relative_eq!(c.alpha, 150.0);
        assert_relative_eq!(c.gamma, 25010.0);
        assert_relative_eq!(c.beta, 10.0 * (50.0 - 15.0));
        assert!(c.xi > 0.0);

        let c = ClosedFormCoefficients::compute(&reference_plant(), &reference_spring_gains(), 50.0);
        assert_relative_eq!(c.alpha, 3100.0);
        assert_relative_eq!(c.gamma, 150100.0);
        assert_relative_eq!(c.delta_k, 200.0);
        assert_relative_eq!(c.delta, 20.0 * 30.0 * 50.0 + 100.0);
    }

    #[test]
    fn null_impedance_reference_coefficients() {
        let tf = build_null_impedance(&reference_plant(), &reference_null_gains()).unwrap();
        // Shared origin factor: numerator keeps its zero at s = 0 because
        // the denominator constant term K Im It is nonzero.
        assert_eq!(tf.num().coeffs(), &[0.0, 2500.0, 5750.0, 50.0]);
        assert_eq!(tf.den().coeffs(), &[12500.0, 37500.0, 25260.0, 23.0, 0.2]);
    }

    #[test]
    fn spring_impedance_reference_coefficients() {
        let tf =
            build_spring_impedance(&reference_plant(), &reference_spring_gains(), 50.0).unwrap();
        assert_eq!(tf.den().coeffs(), &[0.0, 125000.0, 775000.0, 150350.0, 23.0, 0.2]);
        assert_relative_eq!(tf.num().coeff(0), 250.0 * 50.0 * 100.0 * 5.0);
        // Value at s = 0+ approaches the rendered stiffness over s; the
        // residue of the origin pole is checked in the passivity tests.
        let z = tf.eval(Complex64::new(1e-6, 0.0));
        assert_relative_eq!(z.re * 1e-6, 50.0, max_relative = 1e-4);
    }

    #[test]
    fn spring_at_zero_stiffness_reduces_to_null() {
        let plant = reference_plant();
        for gains in [reference_null_gains(), reference_spring_gains()] {
            let spring = build_spring_impedance(&plant, &gains, 0.0).unwrap();
            let null = build_null_impedance(&plant, &gains).unwrap();
            assert_eq!(spring.num().coeffs(), null.num().coeffs());
            assert_eq!(spring.den().coeffs(), null.den().coeffs());
        }
    }

    #[test]
    fn degenerate_gain_combinations_reduce_order() {
        let plant = reference_plant();
        // Both integral gains zero: second order, no origin dynamics.
        let g = ControllerGains::new(20.0, 0.0, 5.0, 0.0).unwrap();
        let tf = build_null_impedance(&plant, &g).unwrap();
        assert_eq!(tf.den().degree(), Some(2));
        assert_eq!(tf.num().degree(), Some(1));

        // Only the velocity integrator zero: third order with origin zero.
        let g = ControllerGains::new(20.0, 0.0, 5.0, 5.0).unwrap();
        let tf = build_null_impedance(&plant, &g).unwrap();
        assert_eq!(tf.den().degree(), Some(3));
        assert_eq!(tf.num().coeff(0), 0.0);

        // Only the torque integrator zero: third order, nonzero dc gain
        // direction (numerator constant term survives).
        let g = ControllerGains::new(20.0, 10.0, 5.0, 0.0).unwrap();
        let tf = build_null_impedance(&plant, &g).unwrap();
        assert_eq!(tf.den().degree(), Some(3));
        assert!(tf.num().coeff(0) != 0.0);
    }

    #[test]
    fn assembled_diagram_matches_closed_form_null() {
        let tf_a = assemble_block_diagram(
            &reference_plant(),
            &reference_null_gains(),
            &RenderTarget::Null,
        )
        .unwrap();
        let tf_b = build_null_impedance(&reference_plant(), &reference_null_gains()).unwrap();
        assert_poly_close(tf_a.num(), tf_b.num());
        assert_poly_close(tf_a.den(), tf_b.den());
    }

    #[test]
    fn assembled_diagram_matches_closed_form_spring() {
        let tf_a = assemble_block_diagram(
            &reference_plant(),
            &reference_spring_gains(),
            &RenderTarget::Spring { kd: 50.0 },
        )
        .unwrap();
        let tf_b =
            build_spring_impedance(&reference_plant(), &reference_spring_gains(), 50.0).unwrap();
        assert_poly_close(tf_a.num(), tf_b.num());
        assert_poly_close(tf_a.den(), tf_b.den());
    }

    #[test]
    fn assembled_diagram_handles_degenerate_gains() {
        let plant = reference_plant();
        let g = ControllerGains::new(20.0, 0.0, 5.0, 0.0).unwrap();
        let tf_a = assemble_block_diagram(&plant, &g, &RenderTarget::Null).unwrap();
        let tf_b = build_null_impedance(&plant, &g).unwrap();
        assert_poly_close(tf_a.num(), tf_b.num());
        assert_poly_close(tf_a.den(), tf_b.den());
    }

    fn assert_poly_close(a: &Polynomial, b: &Polynomial) {
        assert_eq!(a.degree(), b.degree(), "{a:?} vs {b:?}");
        let scale = b
            .coeffs()
            .iter()
            .fold(0.0_f64, |m, &c| m.max(c.abs()));
        for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
            assert!(
                (x - y).abs() <= 1e-12 * scale,
                "coefficient mismatch: {a:?} vs {b:?}"
            );
        }
    }
}
