//! Exact synthesis of algebraic automorphisms of the real torus and sphere
//! that move curvilinear infinitely near points, and classification of
//! surfaces obtained by weighted blow-ups.
//!
//! Everything is generic over the coefficient field; the aliases below fix
//! it to [`Scalar`], the real quadratic tower over the rationals.

pub mod automorphisms;
pub mod dantesque;
pub mod error;
pub mod exactalg;
pub mod json;
pub mod surfaces;
pub mod transitivity;

pub use error::{Error, Result};
pub use exactalg::{AlgError, Rational, Scalar};

pub type ScalarPoly = exactalg::Poly<Scalar>;
pub type ScalarSeries = exactalg::Series<Scalar>;
pub type ScalarPoint = surfaces::Point<Scalar>;
pub type ScalarJet = surfaces::Jet<Scalar>;
pub type ScalarWord = automorphisms::AutWord<Scalar>;
pub type RationalJet = surfaces::Jet<Rational>;
pub type RationalWord = automorphisms::AutWord<Rational>;
