//! Polynomial and rational-function algebra.
//!
//! Everything downstream (impedance construction, stability tests, the
//! numeric passivity route) is built on the small toolkit in this module:
//! dense real polynomials with ascending coefficients, rational transfer
//! functions, companion-matrix root finding, a Routh stability table, and
//! a decision procedure for nonnegativity of even polynomials on the real
//! axis.

mod nonneg;
mod polynomial;
mod rational;
mod roots;
mod routh;

pub use nonneg::{even_poly_nonneg, NonnegCheck};
pub use polynomial::Polynomial;
pub(crate) use rational::poly_eval_scale;
pub use rational::RationalTransferFunction;
pub use roots::roots;
pub use routh::{routh_stable, RouthReport};
