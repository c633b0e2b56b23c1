//! Exact scalars, polynomials and truncated power series.

pub mod crt;
pub mod error;
pub mod field;
pub mod poly;
pub mod ratops;
pub mod series;
pub mod sturm;
pub mod tower;

pub use crt::{crt_combine, crt_modulus};
pub use error::AlgError;
pub use field::{rat, Field, OrderedField, Rational, SqrtField};
pub use poly::Poly;
pub use series::{hensel_sqrt, poly_valuation, series_invert, Series};
pub use sturm::{isolate_root, sturm_count, sturm_root_count, RootRange, SturmCount};
pub use tower::{Scalar, ScalarParser, Tower};

/// Square root of a nonnegative scalar, adjoining a tower level when needed.
pub fn scalar_sqrt_adjoin(s: &Scalar) -> Result<Scalar, AlgError> {
    s.sqrt_adjoin()
}
