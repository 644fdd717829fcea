//! Routh stability table.

use super::Polynomial;
use crate::error::{Error, Result};

/// Outcome of a Routh stability test.
#[derive(Debug, Clone, PartialEq)]
pub struct RouthReport {
    /// First column of the Routh array, highest-order row first, as far as
    /// the construction got.
    pub first_column: Vec<f64>,
    /// All roots strictly in the open left half-plane.
    pub stable: bool,
    /// A first-column pivot vanished relative to its row, so the test sits
    /// on a stability boundary (imaginary-axis roots or a symmetric root
    /// pattern) and `stable` is conservatively false.
    pub marginal: bool,
}

/// Hurwitz stability of a polynomial of arbitrary degree via the Routh
/// array.
///
/// The leading coefficient's sign is normalized away first (stability is
/// invariant under negating the whole polynomial). A pivot counts as zero
/// when its magnitude is at most `1e-12` times the scale of its row; in
/// that case the construction stops and the result is marked marginal
/// rather than continuing with an epsilon substitution, because every
/// marginal case this crate meets is a genuine stability boundary, not an
/// artifact to be perturbed away.
pub fn routh_stable(p: &Polynomial) -> Result<RouthReport> {
    let degree = p.degree().ok_or(Error::ZeroPolynomial)?;
    let coeffs: Vec<f64> = if p.leading().unwrap() < 0.0 {
        p.coeffs().iter().map(|c| -c).collect()
    } else {
        p.coeffs().to_vec()
    };

    if degree == 0 {
        return Ok(RouthReport {
            first_column: coeffs,
            stable: true,
            marginal: false,
        });
    }

    // Rows hold coefficients highest order first, interleaved as usual:
    // row 0 takes a_n, a_{n-2}, ...; row 1 takes a_{n-1}, a_{n-3}, ...
    let width = degree / 2 + 1;
    let mut prev: Vec<f64> = (0..width).map(|k| fetch(&coeffs, degree, 2 * k)).collect();
    let mut curr: Vec<f64> = (0..width)
        .map(|k| fetch(&coeffs, degree, 2 * k + 1))
        .collect();

    let mut first_column = vec![prev[0]];
    for _ in 1..=degree {
        let pivot = curr[0];
        let row_scale = curr
            .iter()
            .chain(prev.iter())
            .fold(0.0_f64, |m, &c| m.max(c.abs()));
        if pivot.abs() <= 1e-12 * row_scale {
            first_column.push(pivot);
            return Ok(RouthReport {
                first_column,
                stable: false,
                marginal: true,
            });
        }
        first_column.push(pivot);
        let next: Vec<f64> = (0..width)
            .map(|j| {
                let a = prev.get(j + 1).copied().unwrap_or(0.0);
                let b = curr.get(j + 1).copied().unwrap_or(0.0);
                (pivot * a - prev[0] * b) / pivot
            })
            .collect();
        prev = curr;
        curr = next;
    }

    let stable = first_column.iter().all(|&c| c > 0.0);
    Ok(RouthReport {
        first_column,
        stable,
        marginal: false,
    })
}

/// Coefficient of `s^(degree - k)`, zero when out of range.
fn fetch(coeffs: &[f64], degree: usize, k: usize) -> f64 {
    degree
        .checked_sub(k)
        .map(|i| coeffs[i])
        .unwrap_or(0.0)
}
