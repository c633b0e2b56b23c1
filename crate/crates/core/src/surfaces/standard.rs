use crate::error::{Error, Result};
use crate::exactalg::{hensel_sqrt, OrderedField, Poly, Series};

use super::jet::Jet;
use super::point::{Point, SpherePoint, SurfaceKind};

/// The orders `e₁, …, e_ℓ` of a tuple of jets, in tuple order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::PreconditionFailed("partition parts must be positive".into()));
        }
        Ok(Partition { parts })
    }

    pub fn of_jets<F: OrderedField>(jets: &[Jet<F>]) -> Self {
        Partition {
            parts: jets.iter().map(Jet::order).collect(),
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `n = Σ e_i`.
    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }
}

/// The jets every configuration is normalized to.
#[derive(Clone, Debug, PartialEq)]
pub struct StandardConfig<F> {
    pub surface: SurfaceKind,
    pub jets: Vec<Jet<F>>,
}

/// Center of the `i`-th standard jet (1-based).
///
/// Torus: `(i, 0)`. Sphere: the equator point with tangent half angle `i + 1`,
/// i.e. `((1 − t²)/(1 + t²), 2t/(1 + t²), 0)`.
pub fn standard_center<F: OrderedField>(surface: SurfaceKind, i: usize) -> Point<F> {
    let i = i as i64;
    match surface {
        SurfaceKind::Torus => Point::torus(F::from_int(i), F::zero()),
        SurfaceKind::Sphere => Point::Sphere(SpherePoint::equator(&F::from_int(i + 1))),
    }
}

/// The `i`-th standard jet of order `e`: `((x − i)^e, y)` on the torus, and
/// `((x − x_i)^e, y − f, z)` on the sphere with `f` the Taylor expansion of
/// `√(1 − x²)` at `x_i`.
pub fn standard_jet<F: OrderedField>(surface: SurfaceKind, i: usize, e: usize) -> Jet<F> {
    match standard_center::<F>(surface, i) {
        Point::Torus(c) => {
            let x0 = c.x.local();
            Jet::torus_graph(Series::zero(x0, e))
        }
        Point::Sphere(c) => {
            let x0 = c.x().clone();
            let f = sqrt_one_minus_square(&x0, c.y(), e);
            Jet::from_parts_unchecked(
                e,
                super::Chart::Sphere {
                    axis: super::Axis::X,
                },
                Point::Sphere(c),
                vec![f, Series::zero(x0, e)],
            )
        }
    }
}

/// Expansion of `√(1 − x²)` at `x0` with value `y0` there.
pub fn sqrt_one_minus_square<F: OrderedField>(x0: &F, y0: &F, e: usize) -> Series<F> {
    let u = Series::from_poly(&Poly::new(vec![F::one(), F::zero(), -F::one()]), x0.clone(), e);
    hensel_sqrt(&u, y0).expect("standard centers have y ≠ 0")
}

/// Standard jets of the given orders, numbered from 1.
pub fn standard_config<F: OrderedField>(surface: SurfaceKind, partition: &Partition) -> StandardConfig<F> {
    StandardConfig {
        surface,
        jets: partition
            .parts()
            .iter()
            .enumerate()
            .map(|(k, &e)| standard_jet(surface, k + 1, e))
            .collect(),
    }
}
