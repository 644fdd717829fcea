//! Nonnegativity of even polynomials on the real axis.

use super::{roots, Polynomial};

/// Result of an [`even_poly_nonneg`] check.
#[derive(Debug, Clone, PartialEq)]
pub struct NonnegCheck {
    /// The polynomial is nonnegative for all real arguments.
    pub nonnegative: bool,
    /// A point where the polynomial is negative, when one exists. For an
    /// even polynomial in a frequency variable this is a frequency, so it
    /// is always reported positive.
    pub witness: Option<f64>,
}

/// Decides whether an even polynomial `P(w)` (only even powers present) is
/// nonnegative for all real `w`, reporting a witness frequency when not.
///
/// Substituting `x = w^2` reduces the question to nonnegativity of a
/// polynomial `q(x)` on `x >= 0`. Up to quadratic `q` the answer is exact
/// sign analysis; beyond that the sign pattern is read off between the
/// positive real roots of `q`, with evaluation points chosen at interval
/// midpoints and past the largest root. A sampled value only counts as
/// negative when it clears the accumulated coefficient scale at that
/// point, so roots grazing the axis (tangencies) do not produce false
/// negativity witnesses.
pub fn even_poly_nonneg(p: &Polynomial) -> NonnegCheck {
    debug_assert!(
        p.coeffs()
            .iter()
            .enumerate()
            .all(|(k, &c)| k % 2 == 0 || c == 0.0),
        "argument must contain only even powers"
    );

    // q(x) = P(sqrt(x)); exact zeros at the bottom are a structural w^2m
    // factor that cannot change the sign on w > 0.
    let q = Polynomial::new(
        p.coeffs()
            .iter()
            .step_by(2)
            .copied()
            .collect::<Vec<f64>>(),
    );
    let stripped = q.shifted_down(q.origin_zeros());

    let Some(degree) = stripped.degree() else {
        // Identically zero, and zero is nonnegative.
        return NonnegCheck {
            nonnegative: true,
            witness: None,
        };
    };

    let c0 = stripped.coeff(0);
    match degree {
        0 => {
            if c0 >= 0.0 {
                nonneg()
            } else {
                negative_at(1.0)
            }
        }
        1 => {
            let c1 = stripped.coeff(1);
            if c0 < 0.0 {
                negative_at(small_x_witness(&stripped))
            } else if c1 < 0.0 {
                // Far enough out the linear term dominates.
                negative_at(2.0 * c0.abs() / c1.abs() + 1.0)
            } else {
                nonneg()
            }
        }
        2 => {
            let c1 = stripped.coeff(1);
            let c2 = stripped.coeff(2);
            if c0 < 0.0 {
                return negative_at(small_x_witness(&stripped));
            }
            if c2 < 0.0 {
                // Evaluate beyond the rightmost root, where the negative
                // leading term has won.
                let r = (-c1 - (c1 * c1 - 4.0 * c2 * c0).sqrt()) / (2.0 * c2);
                return negative_at(2.0 * r.max(0.0) + 1.0);
            }
            if c1 >= 0.0 || c1 * c1 <= 4.0 * c0 * c2 {
                nonneg()
            } else {
                // Interior minimum dips below zero.
                negative_at(-c1 / (2.0 * c2))
            }
        }
        _ => sample_between_roots(&stripped, c0),
    }
}

fn nonneg() -> NonnegCheck {
    NonnegCheck {
        nonnegative: true,
        witness: None,
    }
}

fn negative_at(x: f64) -> NonnegCheck {
    NonnegCheck {
        nonnegative: false,
        witness: Some(x.max(f64::MIN_POSITIVE).sqrt()),
    }
}

/// A small positive `x` where a polynomial with negative constant term is
/// still negative: strictly inside the interval to the first positive root,
/// or anywhere when no root interferes.
fn small_x_witness(q: &Polynomial) -> f64 {
    let first_root = roots(q)
        .ok()
        .into_iter()
        .flatten()
        .filter(|z| z.im.abs() < 1e-9 * z.norm().max(1.0) && z.re > 0.0)
        .map(|z| z.re)
        .fold(f64::INFINITY, f64::min);
    if first_root.is_finite() {
        first_root / 2.0
    } else {
        1.0
    }
}

/// General case: the sign of `q` on `x > 0` can only change at its positive
/// real roots, so evaluating at midpoints between consecutive roots (plus a
/// point before the first and after the last) covers every sign interval.
fn sample_between_roots(q: &Polynomial, c0: f64) -> NonnegCheck {
    if c0 < 0.0 {
        return negative_at(small_x_witness(q));
    }
    let Ok(all_roots) = roots(q) else {
        return nonneg();
    };
    let mut positive: Vec<f64> = all_roots
        .iter()
        .filter(|z| z.im.abs() <= 1e-9 * z.norm().max(1.0) && z.re > 0.0)
        .map(|z| z.re)
        .collect();
    positive.sort_by(|a, b| a.partial_cmp(b).unwrap());
    positive.dedup_by(|b, a| (*b - *a).abs() <= 1e-9 * b.abs().max(1.0));

    let mut candidates = Vec::with_capacity(positive.len() + 2);
    if let Some(&first) = positive.first() {
        candidates.push(first / 2.0);
        for pair in positive.windows(2) {
            candidates.push(0.5 * (pair[0] + pair[1]));
        }
        candidates.push(2.0 * positive.last().unwrap() + 1.0);
    } else {
        // No sign change is possible; sample once near the origin and once
        // far out as a safety net.
        candidates.push(1.0);
        candidates.push(cauchy_bound(q));
    }

    for x in candidates {
        let v = q.eval(x);
        if v < -1e-12 * value_scale(q, x) {
            return negative_at(x);
        }
    }
    nonneg()
}

/// Classic bound beyond which the leading term dominates all others.
fn cauchy_bound(q: &Polynomial) -> f64 {
    let lead = q.leading().unwrap_or(1.0).abs();
    let m = q
        .coeffs()
        .iter()
        .fold(0.0_f64, |acc, &c| acc.max(c.abs()));
    1.0 + m / lead
}

/// Cancellation-free magnitude of `q(x)`, the scale against which a value
/// counts as genuinely negative.
fn value_scale(q: &Polynomial, x: f64) -> f64 {
    let mut pow = 1.0;
    let mut acc = 0.0;
    for &c in q.coeffs() {
        acc += c.abs() * pow;
        pow *= x.abs();
    }
    acc.max(f64::MIN_POSITIVE)
}
