//! Weighted blow-ups of the sphere, torus and Klein bottle, their invariants
//! and the isomorphism decision.

mod classify;
mod descriptor;

pub use classify::{
    descriptor_invariants, descriptor_normalize, is_flat, isomorphism_decide, HomeoInvariants, ResolutionClass,
    Verdict,
};
pub use descriptor::{forest_build, BaseSurface, BlowupForest, BlowupRecord, Parent, SurfaceDescriptor};
