//! Dense real polynomials in one variable.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

/// Relative threshold below which a trailing coefficient is considered a
/// numerical artifact and stripped during normalization.
const TRIM_REL: f64 = 1e-14;

/// Relative threshold for the cancellation cleanup in [`Polynomial::mul_pruned`].
const PRUNE_REL: f64 = 1e-13;

/// A real polynomial stored as ascending coefficients.
///
/// `coeffs[k]` multiplies the k-th power of the variable, so
/// `Polynomial::new([1.0, 2.0, 3.0])` is `3s^2 + 2s + 1`. The zero
/// polynomial is the empty coefficient vector and has no degree.
///
/// Construction normalizes the representation: trailing coefficients whose
/// magnitude is below `1e-14` times the largest coefficient magnitude are
/// dropped, so a leading term that only exists as rounding noise does not
/// masquerade as a genuine degree.
///
/// ```
/// use sea_passivity::polyalg::Polynomial;
///
/// let p = Polynomial::new([6.0, 5.0, 1.0]); // s^2 + 5s + 6
/// assert_eq!(p.degree(), Some(2));
/// assert_eq!(p.eval(-2.0), 0.0);
/// ```
#[derive(Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    /// Builds a polynomial from ascending coefficients, normalizing the
    /// representation.
    pub fn new(coeffs: impl Into<Vec<f64>>) -> Self {
        let mut coeffs = coeffs.into();
        trim_trailing(&mut coeffs);
        Polynomial { coeffs }
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    /// The constant polynomial `c` (the zero polynomial for `c = 0`).
    pub fn constant(c: f64) -> Self {
        Polynomial::new([c])
    }

    /// The single term `c * s^power`.
    pub fn term(c: f64, power: usize) -> Self {
        let mut coeffs = vec![0.0; power + 1];
        coeffs[power] = c;
        Polynomial::new(coeffs)
    }

    /// Ascending coefficients; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// The coefficient of `s^k`, zero beyond the stored degree.
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Leading coefficient, or `None` for the zero polynomial.
    pub fn leading(&self) -> Option<f64> {
        self.coeffs.last().copied()
    }

    /// Evaluates at a real point by Horner's scheme.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Evaluates at a complex point by Horner's scheme.
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::ZERO, |acc, &c| acc * z + c)
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        let coeffs: Vec<f64> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| k as f64 * c)
            .collect();
        Polynomial::new(coeffs)
    }

    /// The reflection `p(-s)`: odd coefficients change sign.
    pub fn reflected(&self) -> Polynomial {
        let coeffs: Vec<f64> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 0 { c } else { -c })
            .collect();
        Polynomial::new(coeffs)
    }

    /// The scalar multiple `c * p`.
    pub fn scaled(&self, c: f64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|&a| a * c).collect::<Vec<_>>())
    }

    /// Divides out `s^count`, asserting the discarded low-order coefficients
    /// are exactly zero.
    pub(crate) fn shifted_down(&self, count: usize) -> Polynomial {
        debug_assert!(self.coeffs.iter().take(count).all(|&c| c == 0.0));
        Polynomial::new(self.coeffs.iter().skip(count).copied().collect::<Vec<_>>())
    }

    /// Number of leading exactly-zero low-order coefficients, i.e. the
    /// multiplicity of the root at the origin as far as the stored
    /// representation is concerned.
    pub(crate) fn origin_zeros(&self) -> usize {
        self.coeffs.iter().take_while(|&&c| c == 0.0).count()
    }

    /// Multiplies two polynomials and then zeroes any product coefficient
    /// that is pure cancellation residue.
    ///
    /// Products of structurally related polynomials (here: a numerator
    /// against a reflected denominator) routinely have coefficients that
    /// cancel exactly in real arithmetic but come out as a few ulps of
    /// noise in floating point, with sign determined by rounding accidents.
    /// A plain magnitude cut cannot see them because the noise scales with
    /// the terms that cancelled, not with the other coefficients. This
    /// routine therefore tracks, per product coefficient, the sum of
    /// magnitudes of the terms that were accumulated into it, and zeroes
    /// the coefficient when it is below `1e-13` of that sum.
    pub fn mul_pruned(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut acc = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        let mut scale = vec![0.0; acc.len()];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                let t = a * b;
                acc[i + j] += t;
                scale[i + j] += t.abs();
            }
        }
        for (c, s) in acc.iter_mut().zip(&scale) {
            if c.abs() <= PRUNE_REL * s {
                *c = 0.0;
            }
        }
        Polynomial::new(acc)
    }
}

fn trim_trailing(coeffs: &mut Vec<f64>) {
    let max = coeffs.iter().fold(0.0_f64, |m, &c| m.max(c.abs()));
    if max == 0.0 || !max.is_finite() {
        if !max.is_finite() {
            // Keep nonfinite input visible rather than silently emptying it;
            // downstream validation rejects nonfinite parameters anyway.
            return;
        }
        coeffs.clear();
        return;
    }
    let thr = TRIM_REL * max;
    while coeffs.last().is_some_and(|c| c.abs() <= thr) {
        coeffs.pop();
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "Polynomial(0)");
        }
        write!(f, "Polynomial(")?;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if k < self.coeffs.len() - 1 {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*s")?,
                _ => write!(f, "{c}*s^{k}")?,
            }
        }
        write!(f, ")")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs: Vec<f64> = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        Polynomial::new(coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs: Vec<f64> = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        Polynomial::new(coeffs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut acc = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                acc[i + j] += a * b;
            }
        }
        Polynomial::new(acc)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scaled(-1.0)
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $trait<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn normalization_strips_rounding_noise_leaders() {
        let p = Polynomial::new([1.0, 2.0, 1e-20]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(p.coeffs(), &[1.0, 2.0]);
    }

    #[test]
    fn zero_polynomial_has_no_degree() {
        assert_eq!(Polynomial::zero().degree(), None);
        assert_eq!(Polynomial::new([0.0, 0.0]).degree(), None);
        assert!(Polynomial::constant(0.0).is_zero());
    }

    #[test]
    fn small_but_dominant_coefficients_survive() {
        // Everything is tiny, so nothing is "noise" relative to the rest.
        let p = Polynomial::new([1e-300, 2e-300]);
        assert_eq!(p.degree(), Some(1));
    }

    #[test]
    fn evaluation_matches_horner_by_hand() {
        let p = Polynomial::new([1.0, -3.0, 2.0]); // 2s^2 - 3s + 1
        assert_relative_eq!(p.eval(2.0), 3.0);
        assert_relative_eq!(p.eval(0.5), 0.0);
        let z = Complex64::new(0.0, 1.0);
        let v = p.eval_complex(z); // 2(-1) - 3i + 1 = -1 - 3i
        assert_relative_eq!(v.re, -1.0);
        assert_relative_eq!(v.im, -3.0);
    }

    #[test]
    fn complex_evaluation_on_quartic_fixture() {
        // Denominator of the rendered null impedance at the reference
        // operating point, evaluated at s = j.
        let p = Polynomial::new([12500.0, 37500.0, 25260.0, 23.0, 0.2]);
        let v = p.eval_complex(Complex64::new(0.0, 1.0));
        assert_relative_eq!(v.re, 12500.0 - 25260.0 + 0.2, epsilon = 1e-9);
        assert_relative_eq!(v.im, 37500.0 - 23.0, epsilon = 1e-9);
    }

    #[test]
    fn arithmetic_and_reflection() {
        let a = Polynomial::new([1.0, 1.0]); // s + 1
        let b = Polynomial::new([-1.0, 1.0]); // s - 1
        let prod = &a * &b;
        assert_eq!(prod.coeffs(), &[-1.0, 0.0, 1.0]);
        assert_eq!(a.reflected().coeffs(), &[1.0, -1.0]);
        assert_eq!((&a + &b).coeffs(), &[0.0, 2.0]);
        assert_eq!((&a - &b).coeffs(), &[2.0]);
    }

    #[test]
    fn derivative_drops_degree() {
        let p = Polynomial::new([5.0, 0.0, 3.0, 4.0]);
        assert_eq!(p.derivative().coeffs(), &[0.0, 6.0, 12.0]);
        assert!(Polynomial::constant(7.0).derivative().is_zero());
    }

    #[test]
    fn pruned_product_zeroes_structural_cancellation() {
        // (a*b)s^2 terms cancel structurally in p(s)*q(s) below: the s^2
        // coefficient of (1 + a s)(1 - a s) is -a^2 + ... none cancel there;
        // build a case with genuine cancellation instead:
        // p = 1 + c s, q = 1 - c s, product s-coefficient = c - c = 0.
        let c = 0.1 + 0.2; // not exactly representable, still cancels vs itself
        let p = Polynomial::new([1.0, c]);
        let q = Polynomial::new([1.0, -c]);
        let prod = p.mul_pruned(&q);
        assert_eq!(prod.coeff(1), 0.0);
        assert_relative_eq!(prod.coeff(0), 1.0);
        assert_relative_eq!(prod.coeff(2), -c * c);
    }

    #[test]
    fn pruned_product_keeps_genuinely_small_coefficients() {
        // A coefficient that is small compared to its neighbours but is the
        // only term accumulated into its slot must survive.
        let p = Polynomial::new([1e-12, 1.0]);
        let q = Polynomial::new([1e-12, 1.0]);
        let prod = p.mul_pruned(&q);
        assert_relative_eq!(prod.coeff(0), 1e-24, max_relative = 1e-12);
        assert_relative_eq!(prod.coeff(1), 2e-12, max_relative = 1e-12);
    }
}
