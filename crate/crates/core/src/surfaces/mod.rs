//! Points and curvilinear infinitely near points of the torus and the sphere.

mod jet;
mod point;
mod standard;

pub use jet::{jet_canonicalize, jets_mutually_distant, Axis, Chart, Germ, Jet, RawIdeal, TangentVector, Violation};
pub use point::{Point, ProjPoint, SpherePoint, SurfaceKind, TorusPoint};
pub use standard::{
    sqrt_one_minus_square, standard_center, standard_config, standard_jet, Partition, StandardConfig,
};
