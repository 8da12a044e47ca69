//! The coupled hyperbolic-parabolic despeckling model and its explicit scheme.
//!
//! The intensity `I` follows a damped wave equation whose diffusivity
//! combines the relative contrast `s = |I_xi| / max |I_xi|` with an edge field
//! `u`; `u` itself relaxes toward `h(|grad I_xi|)` by a reaction-diffusion
//! equation. Both are stepped explicitly with mirror boundaries.

mod params;
mod run;
mod scheme;
mod state;

pub use self::params::{DivergenceForm, EdgeCoupling, ModelParams};
pub use self::run::{floor_input, run, INPUT_FLOOR, SOFT_BOUND_MARGIN};
pub use self::scheme::{diffusivity_g, edge_source_h, relative_contrast_s, step_i, step_u};
pub use self::state::{initial_edge_field, SolverState, StopMode, StoppingRule, DEFAULT_PATIENCE};

pub(crate) use self::params::{at_least_one, positive};
pub(crate) use self::run::{drive, Scheme};
pub(crate) use self::scheme::{relative_contrast, telegraph_step, TelegraphCoefficients};
