//! Polynomial root finding via the companion matrix.

use nalgebra::DMatrix;
use num_complex::Complex64;

#[cfg(test)]
use super::rational::poly_eval_scale;
use super::Polynomial;
use crate::error::{Error, Result};

/// All complex roots of a polynomial, sorted by real part then imaginary
/// part.
///
/// Degrees one and two use the closed forms; higher degrees go through the
/// balanced companion matrix and an eigenvalue solve, followed by a single
/// Newton step on each eigenvalue to polish it against the original
/// coefficients. Conjugate symmetry is not enforced, it falls out of the
/// computation to working precision.
///
/// The zero polynomial has no well-defined root set and is rejected; a
/// nonzero constant returns an empty vector.
pub fn roots(p: &Polynomial) -> Result<Vec<Complex64>> {
    let degree = p.degree().ok_or(Error::ZeroPolynomial)?;
    let mut out = match degree {
        0 => Vec::new(),
        1 => vec![Complex64::new(-p.coeff(0) / p.coeff(1), 0.0)],
        2 => quadratic_roots(p.coeff(0), p.coeff(1), p.coeff(2)),
        _ => {
            let eigs = companion_eigenvalues(p, degree);
            eigs.into_iter().map(|z| newton_polish(p, z)).collect()
        }
    };
    out.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    Ok(out)
}

/// Roots of `c2 x^2 + c1 x + c0`, using the formulation that avoids
/// cancellation between `-c1` and the discriminant root.
fn quadratic_roots(c0: f64, c1: f64, c2: f64) -> Vec<Complex64> {
    let disc = c1 * c1 - 4.0 * c2 * c0;
    if disc >= 0.0 {
        let q = -0.5 * (c1 + c1.signum() * disc.sqrt());
        let (r1, r2) = if q == 0.0 {
            (0.0, 0.0)
        } else {
            (q / c2, c0 / q)
        };
        vec![Complex64::new(r1, 0.0), Complex64::new(r2, 0.0)]
    } else {
        let re = -c1 / (2.0 * c2);
        let im = (-disc).sqrt() / (2.0 * c2.abs());
        vec![Complex64::new(re, im), Complex64::new(re, -im)]
    }
}

fn companion_eigenvalues(p: &Polynomial, degree: usize) -> Vec<Complex64> {
    let lead = p.leading().expect("nonzero by contract");
    let n = degree;
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        m[(i, n - 1)] = -p.coeff(i) / lead;
        if i > 0 {
            m[(i, i - 1)] = 1.0;
        }
    }
    balance(&mut m);
    m.complex_eigenvalues().iter().copied().collect()
}

/// In-place diagonal balancing (Parlett-Reinsch): rescales rows and columns
/// by powers of two until each row/column pair has comparable 1-norms.
/// Companion matrices of polynomials with widely ranged coefficients are
/// badly scaled, and balancing is what keeps the eigenvalues of, say, a
/// stiff actuator denominator accurate.
fn balance(m: &mut DMatrix<f64>) {
    let n = m.nrows();
    let radix = 2.0_f64;
    loop {
        let mut converged = true;
        for i in 0..n {
            let mut c: f64 = (0..n).filter(|&j| j != i).map(|j| m[(j, i)].abs()).sum();
            let mut r: f64 = (0..n).filter(|&j| j != i).map(|j| m[(i, j)].abs()).sum();
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            while c < r / radix {
                c *= radix;
                r /= radix;
                f *= radix;
            }
            while c >= r * radix {
                c /= radix;
                r *= radix;
                f /= radix;
            }
            if c + r < 0.95 * s {
                converged = false;
                for j in 0..n {
                    m[(i, j)] /= f;
                }
                for j in 0..n {
                    m[(j, i)] *= f;
                }
            }
        }
        if converged {
            return;
        }
    }
}

/// One Newton step, kept only if it reduces the residual.
fn newton_polish(p: &Polynomial, z: Complex64) -> Complex64 {
    let deriv = p.derivative();
    let dz = deriv.eval_complex(z);
    if dz == Complex64::ZERO {
        return z;
    }
    let refined = z - p.eval_complex(z) / dz;
    if p.eval_complex(refined).norm() < p.eval_complex(z).norm() {
        refined
    } else {
        z
    }
}

/// Largest relative residual of a candidate root set: `|p(z)| / scale(z)`
/// maximized over the set, where the scale is the cancellation-free
/// magnitude of the evaluation.
#[cfg(test)]
pub(crate) fn max_relative_residual(p: &Polynomial, roots: &[Complex64]) -> f64 {
    roots
        .iter()
        .map(|&z| p.eval_complex(z).norm() / poly_eval_scale(p, z))
        .fold(0.0, f64::max)
}
