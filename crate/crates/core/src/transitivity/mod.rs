//! Synthesis of automorphisms moving configurations of curvilinear jets.

mod enumerate;
mod nonvertical;
mod rotation;
mod separate;
mod synth;

pub use enumerate::{candidates, rationals, rotation_from_half_tangent, SynthOptions, ENUM_LIMIT_VAR};
pub use nonvertical::{
    make_nonvertical_sphere, make_nonvertical_torus, sphere_forbidden_lambdas, sphere_lambda_twist,
    torus_forbidden_slopes, torus_slope_twist,
};
pub use rotation::solve_rotation_parameter;
pub use separate::{separate_points_sphere, separate_points_torus};
pub use synth::{synth, synth_pair, synth_sphere, synth_torus};
