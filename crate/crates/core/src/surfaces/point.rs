use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::{Field, OrderedField};

/// Which surface an object lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SurfaceKind {
    /// `P¹(R) × P¹(R)`, the real algebraic torus.
    Torus,
    /// The unit sphere `x² + y² + z² = 1`.
    Sphere,
}

impl SurfaceKind {
    pub fn name(self) -> &'static str {
        match self {
            SurfaceKind::Torus => "torus",
            SurfaceKind::Sphere => "sphere",
        }
    }
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A point `(u:v)` of the real projective line, scaled so that its last
/// nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq)]
pub struct ProjPoint<F> {
    u: F,
    v: F,
}

impl<F: Field> ProjPoint<F> {
    pub fn new(u: F, v: F) -> Result<Self> {
        if !v.is_zero() {
            Ok(ProjPoint {
                u: u / &v,
                v: F::one(),
            })
        } else if !u.is_zero() {
            Ok(Self::infinity())
        } else {
            Err(Error::ZeroPoint)
        }
    }

    /// The affine point `x = (x:1)`.
    pub fn finite(x: F) -> Self {
        ProjPoint { u: x, v: F::one() }
    }

    pub fn infinity() -> Self {
        ProjPoint {
            u: F::one(),
            v: F::zero(),
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.v.is_zero()
    }

    /// The affine coordinate `u/v`, if finite.
    pub fn affine(&self) -> Option<&F> {
        if self.is_infinite() {
            None
        } else {
            Some(&self.u)
        }
    }

    pub fn u(&self) -> &F {
        &self.u
    }

    pub fn v(&self) -> &F {
        &self.v
    }

    /// Coordinate in the chart centered on this point's side of the line:
    /// `x` itself when finite, `1/x` (which is 0 here) at infinity.
    pub fn local(&self) -> F {
        self.affine().cloned().unwrap_or_else(F::zero)
    }
}

impl<F: fmt::Display + Field> fmt::Display for ProjPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.affine() {
            Some(x) => write!(f, "{x}"),
            None => f.write_str("inf"),
        }
    }
}

impl<F: fmt::Debug> fmt::Debug for ProjPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}:{:?})", self.u, self.v)
    }
}

/// A point of `P¹(R) × P¹(R)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TorusPoint<F> {
    pub x: ProjPoint<F>,
    pub y: ProjPoint<F>,
}

impl<F: Field> TorusPoint<F> {
    pub fn new(x: ProjPoint<F>, y: ProjPoint<F>) -> Self {
        TorusPoint { x, y }
    }

    pub fn affine(x: F, y: F) -> Self {
        TorusPoint {
            x: ProjPoint::finite(x),
            y: ProjPoint::finite(y),
        }
    }

    pub fn factor(&self, k: usize) -> &ProjPoint<F> {
        match k {
            0 => &self.x,
            1 => &self.y,
            _ => panic!("torus factor index {k} out of range"),
        }
    }
}

/// A point of the unit sphere.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpherePoint<F> {
    coords: [F; 3],
}

impl<F: Field> SpherePoint<F> {
    /// Checks `x² + y² + z² = 1` exactly.
    pub fn new(x: F, y: F, z: F) -> Result<Self> {
        let n = x.square() + &y.square() + &z.square();
        if n != F::one() {
            return Err(Error::NotOnSphere(n.to_string()));
        }
        Ok(SpherePoint { coords: [x, y, z] })
    }

    pub(crate) fn new_unchecked(coords: [F; 3]) -> Self {
        SpherePoint { coords }
    }

    /// The rational point with tangent-half-angle parameter `t` on the equator:
    /// `((1 − t²)/(1 + t²), 2t/(1 + t²), 0)`.
    pub fn equator(t: &F) -> Self {
        let den = F::one() + &t.square();
        let x = (F::one() - &t.square()) / &den;
        let y = (t.clone() + t) / &den;
        SpherePoint {
            coords: [x, y, F::zero()],
        }
    }

    pub fn coords(&self) -> &[F; 3] {
        &self.coords
    }

    pub fn x(&self) -> &F {
        &self.coords[0]
    }

    pub fn y(&self) -> &F {
        &self.coords[1]
    }

    pub fn z(&self) -> &F {
        &self.coords[2]
    }
}

/// A point of either surface.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Point<F> {
    Torus(TorusPoint<F>),
    Sphere(SpherePoint<F>),
}

impl<F: Field> Point<F> {
    pub fn surface(&self) -> SurfaceKind {
        match self {
            Point::Torus(_) => SurfaceKind::Torus,
            Point::Sphere(_) => SurfaceKind::Sphere,
        }
    }

    pub fn as_torus(&self) -> Option<&TorusPoint<F>> {
        match self {
            Point::Torus(p) => Some(p),
            Point::Sphere(_) => None,
        }
    }

    pub fn as_sphere(&self) -> Option<&SpherePoint<F>> {
        match self {
            Point::Sphere(p) => Some(p),
            Point::Torus(_) => None,
        }
    }

    pub fn torus(x: F, y: F) -> Self {
        Point::Torus(TorusPoint::affine(x, y))
    }

    pub fn sphere(x: F, y: F, z: F) -> Result<Self> {
        SpherePoint::new(x, y, z).map(Point::Sphere)
    }
}

impl<F: OrderedField> SpherePoint<F> {
    /// Whether the point is on the equator `z = 0`.
    pub fn on_equator(&self) -> bool {
        self.coords[2].is_zero()
    }
}
