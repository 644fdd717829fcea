//! Rational transfer functions.

use num_complex::Complex64;

use super::Polynomial;
use crate::error::{Error, Result};

/// A transfer function `num(s) / den(s)` with real coefficients.
///
/// Construction cancels common factors of `s` shared by numerator and
/// denominator, but only factors that are visible as exactly-zero low-order
/// coefficients. This is deliberate: the impedance builders in this crate
/// produce such factors structurally (terms that vanish when a gain is
/// exactly zero), and cancelling them keeps an origin pole or zero from
/// being double-counted. No approximate pole/zero cancellation is ever
/// attempted.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalTransferFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalTransferFunction {
    /// Builds `num / den`, rejecting a zero denominator and cancelling
    /// shared exact factors of `s`.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if num.is_zero() {
            return Ok(RationalTransferFunction { num, den });
        }
        let shared = num.origin_zeros().min(den.origin_zeros());
        Ok(RationalTransferFunction {
            num: num.shifted_down(shared),
            den: den.shifted_down(shared),
        })
    }

    /// Numerator after cancellation.
    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    /// Denominator after cancellation.
    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    /// Evaluates the transfer function at a complex point.
    pub fn eval(&self, s: Complex64) -> Complex64 {
        self.num.eval_complex(s) / self.den.eval_complex(s)
    }

    /// Residue at a simple pole.
    ///
    /// For a simple pole `p` the residue is `num(p) / den'(p)`. The call
    /// verifies that `p` really is a pole (`den(p)` small relative to the
    /// coefficient scale at `p`) and that it is simple (`den'(p)` not
    /// small on the same relative scale); otherwise the residue is not
    /// defined and an error is returned.
    pub fn residue_at(&self, pole: Complex64) -> Result<Complex64> {
        let dval = self.den.eval_complex(pole);
        if dval.norm() > 1e-8 * eval_scale(&self.den, pole) {
            return Err(Error::NotSimplePole {
                pole,
                reason: format!("denominator is {:.3e} there, not a root", dval.norm()),
            });
        }
        let deriv = self.den.derivative();
        let dprime = deriv.eval_complex(pole);
        if dprime.norm() <= 1e-12 * eval_scale(&deriv, pole) {
            return Err(Error::NotSimplePole {
                pole,
                reason: "denominator derivative also vanishes (multiple root)".into(),
            });
        }
        Ok(self.num.eval_complex(pole) / dprime)
    }
}

/// A magnitude scale for `p(z)`: the value the evaluation would have if no
/// cancellation occurred between terms. Used to turn absolute residuals
/// into relative ones.
pub(crate) fn eval_scale(p: &Polynomial, z: Complex64) -> f64 {
    let r = z.norm().max(1.0);
    let mut pow = 1.0;
    let mut acc = 0.0;
    for &c in p.coeffs() {
        acc += c.abs() * pow;
        pow *= r;
    }
    acc.max(f64::MIN_POSITIVE)
}

pub(crate) use eval_scale as poly_eval_scale;
