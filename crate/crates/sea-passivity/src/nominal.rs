//! Reference operating points used by tests, docs, and the scenario
//! reproduction command.
//!
//! These are a concrete actuator and controller tunings that exercise the
//! analysis well: the null tuning is passive with room to spare, the
//! spring tuning renders a 50 Nm/rad virtual spring inside the renderable
//! range, and the pair of torque-integrator tunings sits on either side of
//! the damping bound, which makes it the standard demonstration that motor
//! damping can destroy passivity.

use crate::model::{ControllerGains, PlantParams};

/// Reference actuator: 0.2 kg m^2 reflected inertia, 3 Nm s/rad motor
/// damping, 250 Nm/rad spring.
pub fn plant() -> PlantParams {
    PlantParams::new(0.2, 3.0, 250.0).expect("reference plant is valid")
}

/// Reference gains for null rendering.
pub fn null_gains() -> ControllerGains {
    ControllerGains::new(20.0, 10.0, 5.0, 5.0).expect("reference gains are valid")
}

/// Reference gains for spring rendering.
pub fn spring_gains() -> ControllerGains {
    ControllerGains::new(20.0, 100.0, 30.0, 5.0).expect("reference gains are valid")
}

/// Virtual stiffness rendered in the reference spring configuration.
pub const SPRING_KD: f64 = 50.0;

/// Torque-loop tuning that respects the damping bound on the reference
/// actuator (`It` below `Pt Im / b`).
pub fn damped_ok_gains() -> ControllerGains {
    ControllerGains::new(20.0, 10.0, 5.0, 15.0).expect("reference gains are valid")
}

/// Torque-loop tuning that violates the damping bound on the reference
/// actuator: identical to [`damped_ok_gains`] except for a larger torque
/// integral gain, and not passive despite a stable closed loop.
pub fn damped_violating_gains() -> ControllerGains {
    ControllerGains::new(20.0, 10.0, 5.0, 80.0).expect("reference gains are valid")
}
