//! Reduction gadgets and the interpolation step that inverts them. Each
//! construction comes with the weight function or scale factor that makes
//! its partition-function identity exact.

mod constructions;
mod functions;
mod interpolation;

pub use constructions::{
    component_separator, equality_eliminator, pad_to_arity, two_stretch, vertex_power, GadgetResult,
};
pub use functions::{
    component_homs, eliminator_scale, gram, power_weight, power_weight_lemma, separator_eta, support_indicator, tilde_f,
};
pub use interpolation::{recover_via_interpolation, Interpolation, InterpolationPlan};
