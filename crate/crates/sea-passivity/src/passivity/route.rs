//! Strategy registry for the passivity routes.
//!
//! Both decision procedures answer the same question from the same inputs,
//! so they share a trait and are registered by name. Callers that let the
//! user pick a route (the command line, the sweep report) go through
//! [`route_by_name`]; code that wants a specific route calls the concrete
//! functions directly.

use super::closed_form::check_closed_form;
use super::numeric::check_numeric;
use super::verdict::PassivityVerdict;
use crate::error::Result;
use crate::model::{build_impedance, ControllerGains, PlantParams, RenderTarget};

/// A passivity decision procedure.
pub trait PassivityRoute: Sync {
    /// Registry name, stable across versions.
    fn name(&self) -> &'static str;
    /// Decides passivity for one operating point.
    fn check(
        &self,
        plant: &PlantParams,
        gains: &ControllerGains,
        target: &RenderTarget,
    ) -> Result<PassivityVerdict>;
}

/// Inequality evaluation on the parameters.
pub struct ClosedFormRoute;

impl PassivityRoute for ClosedFormRoute {
    fn name(&self) -> &'static str {
        "closed-form"
    }

    fn check(
        &self,
        plant: &PlantParams,
        gains: &ControllerGains,
        target: &RenderTarget,
    ) -> Result<PassivityVerdict> {
        Ok(check_closed_form(plant, gains, target))
    }
}

/// Frequency-domain test on the constructed transfer function.
pub struct NumericRoute;

impl PassivityRoute for NumericRoute {
    fn name(&self) -> &'static str {
        "numeric"
    }

    fn check(
        &self,
        plant: &PlantParams,
        gains: &ControllerGains,
        target: &RenderTarget,
    ) -> Result<PassivityVerdict> {
        let tf = build_impedance(plant, gains, target)?;
        check_numeric(&tf)
    }
}

static ROUTES: [&dyn PassivityRoute; 2] = [&ClosedFormRoute, &NumericRoute];

/// All registered routes, closed-form first.
pub fn routes() -> &'static [&'static dyn PassivityRoute] {
    &ROUTES
}

/// Looks a route up by its registry name.
pub fn route_by_name(name: &str) -> Option<&'static dyn PassivityRoute> {
    routes().iter().copied().find(|r| r.name() == name)
}
