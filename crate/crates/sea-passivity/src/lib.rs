//! Passivity analysis for velocity-sourced series elastic actuators.
//!
//! A series elastic actuator (SEA) drives its load through a spring, and a
//! common control structure for rendering a virtual impedance at the output
//! is a cascade of a PI torque loop around an inner PI velocity loop. This
//! crate answers the question "is the rendered output impedance passive?"
//! for that structure, both for pure spring rendering and for the null
//! (zero-impedance) case, and does so twice over:
//!
//! * a closed-form route built from explicit inequalities on the plant and
//!   controller parameters, with exact boundary expressions for the maximum
//!   renderable stiffness, motor damping, and load-side inertia, and
//! * a numeric route that tests the frequency-domain passivity conditions
//!   (stable poles, nonnegative real part on the imaginary axis, positive
//!   residues at simple imaginary poles) directly on the transfer function.
//!
//! The two routes are developed independently so they can cross-validate
//! each other; [`passivity::agreement_sweep`] does exactly that over random
//! parameter draws. On top of the core decision procedure the crate offers
//! closed-form parameter bounds and design guidelines ([`bounds`]), Bode
//! sweeps with regime segmentation ([`freq`]), and a gain tuner that works
//! backwards from a desired rendering target ([`tuner`]).
//!
//! Polynomial and rational-function machinery lives in [`polyalg`]; the
//! plant and controller model, including the block-diagram assembly of the
//! output impedance, lives in [`model`].

pub mod bounds;
pub mod error;
pub mod freq;
pub mod model;
pub mod nominal;
pub mod passivity;
pub mod polyalg;
pub mod tuner;

pub use error::{Error, Result};
pub use model::{ControllerGains, PlantParams, RenderTarget};
pub use passivity::{check_closed_form, check_numeric, PassivityVerdict};
