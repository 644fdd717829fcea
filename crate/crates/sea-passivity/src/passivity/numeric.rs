//! Numeric frequency-domain passivity test.
//!
//! Knows nothing about where a transfer function came from: it applies the
//! three positive-realness conditions directly. Poles come from the
//! companion-matrix solver, the sign of the real part along the imaginary
//! axis is decided symbolically through an even-polynomial nonnegativity
//! check (sampling only refines the witness afterwards), and imaginary-axis
//! poles are vetted through their residues.

use num_complex::Complex64;

use super::verdict::{Condition, FailedCondition, PassivityVerdict, Route};
use crate::error::{Error, Result};
use crate::polyalg::{even_poly_nonneg, roots, Polynomial, RationalTransferFunction};

/// Relative threshold under which a pole counts as lying on the imaginary
/// axis.
const AXIS_THRESHOLD: f64 = 1e-9;

/// Relative half-width of the near-boundary zone in which a verdict is
/// flagged marginal: poles almost on the axis, or real-part coefficients
/// almost zero.
const MARGINAL_BAND: f64 = 1e-6;

/// Frequency-domain passivity check on a transfer function.
///
/// The verdict aggregates three conditions. Condition one: every pole in
/// the open left half-plane, except simple imaginary-axis poles. Condition
/// two: nonnegative real part on the imaginary axis, established through
/// `P(w) = Re{num(jw) conj(den(jw))}` as an exact even-polynomial
/// question, with a refined witness frequency on failure. Condition three:
/// each imaginary-axis pole simple with a positive real residue.
pub fn check_numeric(tf: &RationalTransferFunction) -> Result<PassivityVerdict> {
    if tf.num().is_zero() {
        // Identically zero: a short circuit absorbs nothing and returns
        // nothing, which satisfies every passivity condition.
        return Ok(PassivityVerdict::passed(Route::Numeric, false));
    }

    let mut failed = Vec::new();
    let mut marginal = false;

    check_poles_and_residues(tf, &mut failed, &mut marginal)?;
    let witness = check_real_part(tf, &mut failed, &mut marginal);

    Ok(if failed.is_empty() {
        PassivityVerdict::passed(Route::Numeric, marginal)
    } else {
        PassivityVerdict::failed(Route::Numeric, failed, witness, marginal)
    })
}

fn check_poles_and_residues(
    tf: &RationalTransferFunction,
    failed: &mut Vec<FailedCondition>,
    marginal: &mut bool,
) -> Result<()> {
    let den = tf.den();

    // The origin pole is structural: its multiplicity is the number of
    // exactly-zero low-order denominator coefficients left after shared
    // factors were cancelled at construction.
    let origin_multiplicity = den.origin_zeros();
    let den_rest = den.shifted_down(origin_multiplicity);
    match origin_multiplicity {
        0 => {}
        1 => {
            let residue = tf.num().coeff(0) / den_rest.coeff(0);
            if residue <= 0.0 {
                failed.push(FailedCondition {
                    condition: Condition::ImaginaryPoleResidues,
                    description: format!("origin pole has nonpositive residue {residue}"),
                    margin: None,
                });
            } else if residue.abs() <= MARGINAL_BAND * residue_scale(tf, &den_rest) {
                *marginal = true;
            }
        }
        m => failed.push(FailedCondition {
            condition: Condition::ImaginaryPoleResidues,
            description: format!("origin pole of multiplicity {m}"),
            margin: None,
        }),
    }

    if den_rest.degree().unwrap_or(0) == 0 {
        return Ok(());
    }
    let poles = roots(&den_rest)?;
    for pole in poles {
        // Conjugate partners carry the same information; report the upper
        // half-plane representative only.
        if pole.im < 0.0 {
            continue;
        }
        let scale = pole.norm().max(1.0);
        if pole.re.abs() <= AXIS_THRESHOLD * scale {
            check_axis_residue(tf, pole, failed, marginal);
        } else {
            if pole.re.abs() <= MARGINAL_BAND * scale {
                // Either side of the axis: too close for the half-plane
                // classification to be trustworthy.
                *marginal = true;
            }
            if pole.re > 0.0 {
                failed.push(FailedCondition {
                    condition: Condition::StablePoles,
                    description: format!(
                        "pole at {:.6e} {:+.6e}j in the right half-plane",
                        pole.re, pole.im
                    ),
                    margin: None,
                });
            }
        }
    }
    Ok(())
}

/// Scale for judging whether an origin residue is "almost zero": the
/// residue a generic numerator of this size would produce.
fn residue_scale(tf: &RationalTransferFunction, den_rest: &Polynomial) -> f64 {
    let num_scale = tf
        .num()
        .coeffs()
        .iter()
        .fold(0.0_f64, |m, &c| m.max(c.abs()));
    num_scale / den_rest.coeff(0).abs().max(f64::MIN_POSITIVE)
}

fn check_axis_residue(
    tf: &RationalTransferFunction,
    pole: Complex64,
    failed: &mut Vec<FailedCondition>,
    marginal: &mut bool,
) {
    // Snap the representative onto the axis; the residue formula is
    // evaluated at the snapped point where den is closest to zero.
    let on_axis = Complex64::new(0.0, pole.im);
    match tf.residue_at(on_axis) {
        Err(Error::NotSimplePole { reason, .. }) => failed.push(FailedCondition {
            condition: Condition::ImaginaryPoleResidues,
            description: format!("pole at {:.6e}j: {reason}", pole.im),
            margin: None,
        }),
        Err(_) => unreachable!("residue_at only reports NotSimplePole"),
        Ok(residue) => {
            let mag = residue.norm();
            if residue.im.abs() > AXIS_THRESHOLD * mag || residue.re <= 0.0 {
                failed.push(FailedCondition {
                    condition: Condition::ImaginaryPoleResidues,
                    description: format!(
                        "pole at {:.6e}j has residue {:.6e} {:+.6e}j, not positive real",
                        pole.im, residue.re, residue.im
                    ),
                    margin: None,
                });
            } else if residue.re <= MARGINAL_BAND * mag {
                *marginal = true;
            }
        }
    }
}

/// Condition two: `P(w) >= 0` for all `w`, where `P` is the numerator of
/// the real part of the frequency response. Returns the witness frequency
/// when the condition fails.
fn check_real_part(
    tf: &RationalTransferFunction,
    failed: &mut Vec<FailedCondition>,
    marginal: &mut bool,
) -> Option<f64> {
    // Q(s) = num(s) den(-s); on s = jw the even part of Q carries the real
    // part: P(w) = sum over even k of (-1)^(k/2) Q_k w^k. The product is
    // pruned because the top coefficients of Q routinely cancel
    // structurally, and their rounding residue would otherwise decide the
    // sign of P at high frequency.
    let q = tf.num().mul_pruned(&tf.den().reflected());
    let mut p_coeffs = vec![0.0; q.coeffs().len()];
    for (k, &c) in q.coeffs().iter().enumerate() {
        if k % 2 == 0 {
            let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
            p_coeffs[k] = sign * c;
        }
    }
    let p_even = Polynomial::new(p_coeffs);

    // A coefficient that is nonzero yet far below the polynomial's scale
    // puts the sign decision inside numeric noise territory.
    let x_coeffs: Vec<f64> = p_even.coeffs().iter().step_by(2).copied().collect();
    let x_max = x_coeffs.iter().fold(0.0_f64, |m, &c| m.max(c.abs()));
    if x_coeffs
        .iter()
        .skip_while(|&&c| c == 0.0)
        .any(|&c| c != 0.0 && c.abs() <= MARGINAL_BAND * x_max)
    {
        *marginal = true;
    }

    let check = even_poly_nonneg(&p_even);
    if check.nonnegative {
        return None;
    }
    let witness = check.witness.map(|w0| refine_witness(&p_even, w0));
    failed.push(FailedCondition {
        condition: Condition::NonnegativeRealPart,
        description: match witness {
            Some(w) => format!("real part is negative near w = {w:.6e} rad/s"),
            None => "real part is negative on the imaginary axis".to_string(),
        },
        margin: None,
    });
    witness
}

/// Moves a raw negativity witness to the most negative point of the
/// normalized real-part polynomial: a diagnostic log-grid scan (the
/// standard sweep decades plus the witness's own neighborhood) followed by
/// golden-section refinement between the best grid point's neighbors.
fn refine_witness(p_even: &Polynomial, w0: f64) -> f64 {
    let normalized = |w: f64| {
        let scale = p_even
            .coeffs()
            .iter()
            .enumerate()
            .fold(0.0_f64, |acc, (k, &c)| acc + c.abs() * w.powi(k as i32));
        p_even.eval(w) / scale.max(f64::MIN_POSITIVE)
    };

    let mut best_w = w0;
    let mut best_v = normalized(w0);
    let mut scan = |lo: f64, hi: f64, per_decade: usize| {
        let decades = (hi / lo).log10();
        let n = (decades * per_decade as f64).ceil() as usize;
        for i in 0..=n {
            let w = lo * 10f64.powf(i as f64 / per_decade as f64);
            if w > hi * (1.0 + 1e-12) {
                break;
            }
            let v = normalized(w);
            if v < best_v {
                best_v = v;
                best_w = w;
            }
        }
    };
    scan(1e-3, 1e6, 200);
    scan(w0 / 10.0, w0 * 10.0, 200);

    // Golden-section on the log axis around the best point.
    let phi = 0.5 * (5.0_f64.sqrt() - 1.0);
    let (mut a, mut b) = (best_w / 10f64.powf(0.01), best_w * 10f64.powf(0.01));
    let (mut la, mut lb) = (a.ln(), b.ln());
    for _ in 0..60 {
        let l1 = lb - phi * (lb - la);
        let l2 = la + phi * (lb - la);
        if normalized(l1.exp()) < normalized(l2.exp()) {
            lb = l2;
        } else {
            la = l1;
        }
        if (lb - la).abs() < 1e-9 {
            break;
        }
    }
    a = la.exp();
    b = lb.exp();
    let mid = (a * b).sqrt();
    if normalized(mid) <= best_v {
        mid
    } else {
        best_w
    }
}
