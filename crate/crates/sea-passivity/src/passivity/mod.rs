//! Passivity decisions by two independent routes.
//!
//! The closed-form route ([`check_closed_form`]) evaluates explicit
//! inequalities on the plant and controller parameters; the numeric route
//! ([`check_numeric`]) applies the frequency-domain passivity conditions
//! to the transfer function itself, knowing nothing about where it came
//! from. The two are developed against different failure modes, agree
//! everywhere away from decision boundaries, and [`agreement_sweep`]
//! verifies that agreement over random parameter draws.

mod closed_form;
mod numeric;
mod route;
mod sweep;
mod verdict;

pub use closed_form::{check_closed_form, check_closed_form_with_band, DEFAULT_BOUNDARY_BAND};
pub use numeric::check_numeric;
pub use route::{route_by_name, routes, ClosedFormRoute, NumericRoute, PassivityRoute};
pub use sweep::{agreement_sweep, Disagreement, SweepConfig, SweepReport, SweepTargetKind};
pub use verdict::{Condition, FailedCondition, PassivityVerdict, Route};
