use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::{OrderedField, Series};
use crate::surfaces::{Germ, Jet, Point, ProjPoint, SpherePoint, SurfaceKind, TorusPoint};

use super::generator::Generator;

/// A composition of certified generators, applied left to right.
#[derive(Clone, Debug, PartialEq)]
pub struct AutWord<F> {
    surface: SurfaceKind,
    gens: Vec<Generator<F>>,
}

fn point_germ<F: OrderedField>(p: &Point<F>) -> Germ<F> {
    let c = |x: &F| Series::constant(F::zero(), 1, x.clone());
    match p {
        Point::Torus(t) => Germ {
            surface: SurfaceKind::Torus,
            coords: vec![c(t.x.u()), c(t.x.v()), c(t.y.u()), c(t.y.v())],
        },
        Point::Sphere(s) => Germ {
            surface: SurfaceKind::Sphere,
            coords: s.coords().iter().map(c).collect(),
        },
    }
}

fn germ_point<F: OrderedField>(g: &Germ<F>) -> Point<F> {
    let c: Vec<F> = g.coords.iter().map(|s| s.constant_term().clone()).collect();
    match g.surface {
        SurfaceKind::Torus => Point::Torus(TorusPoint::new(
            ProjPoint::new(c[0].clone(), c[1].clone()).expect("automorphisms map points to points"),
            ProjPoint::new(c[2].clone(), c[3].clone()).expect("automorphisms map points to points"),
        )),
        SurfaceKind::Sphere => {
            let [x, y, z]: [F; 3] = c.try_into().expect("sphere germs have three coordinates");
            Point::Sphere(SpherePoint::new(x, y, z).expect("sphere twists preserve the sphere"))
        }
    }
}

/// Germs of order 2 through `p` along each chart direction: the torus chart of
/// `p` (affine coordinate, or its inverse at infinity), or `R³` for the sphere.
fn direction_germs<F: OrderedField>(p: &Point<F>) -> Vec<Germ<F>> {
    let c = |x: F| Series::constant(F::zero(), 2, x);
    let bump = |x: F, on: bool| {
        let s = c(x);
        if on {
            &s + &Series::variable(F::zero(), 2)
        } else {
            s
        }
    };
    match p {
        Point::Torus(t) => (0..2)
            .map(|j| {
                let mut coords = Vec::with_capacity(4);
                for (k, f) in [&t.x, &t.y].into_iter().enumerate() {
                    let l = bump(f.local(), k == j);
                    if f.is_infinite() {
                        coords.extend([c(F::one()), l]);
                    } else {
                        coords.extend([l, c(F::one())]);
                    }
                }
                Germ {
                    surface: SurfaceKind::Torus,
                    coords,
                }
            })
            .collect(),
        Point::Sphere(s) => (0..3)
            .map(|j| Germ {
                surface: SurfaceKind::Sphere,
                coords: s
                    .coords()
                    .iter()
                    .enumerate()
                    .map(|(k, x)| bump(x.clone(), k == j))
                    .collect(),
            })
            .collect(),
    }
}

/// Derivatives of the chart coordinates of a germ at `t = 0`.
fn germ_velocity<F: OrderedField>(g: &Germ<F>) -> Vec<F> {
    match g.surface {
        SurfaceKind::Torus => (0..2)
            .map(|k| {
                let (u, v) = (&g.coords[2 * k], &g.coords[2 * k + 1]);
                let l = if v.is_unit() { u.div(v) } else { v.div(u) };
                l.expect("normalized torus germ").coeff(1).clone()
            })
            .collect(),
        SurfaceKind::Sphere => g.coords.iter().map(|s| s.coeff(1).clone()).collect(),
    }
}

fn mat_mul<F: OrderedField>(a: &[Vec<F>], b: &[Vec<F>]) -> Vec<Vec<F>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(F::zero(), |acc, k| acc + &(a[i][k].clone() * &b[k][j])))
                .collect()
        })
        .collect()
}

fn identity_matrix<F: OrderedField>(n: usize) -> Vec<Vec<F>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect())
        .collect()
}

impl<F: OrderedField> AutWord<F> {
    pub fn identity(surface: SurfaceKind) -> Self {
        AutWord {
            surface,
            gens: Vec::new(),
        }
    }

    pub fn new(surface: SurfaceKind, gens: Vec<Generator<F>>) -> Result<Self> {
        if gens.iter().any(|g| g.surface() != surface) {
            return Err(Error::MixedSurfaces);
        }
        Ok(AutWord { surface, gens })
    }

    pub fn single(g: Generator<F>) -> Self {
        AutWord {
            surface: g.surface(),
            gens: vec![g],
        }
    }

    pub fn surface(&self) -> SurfaceKind {
        self.surface
    }

    pub fn generators(&self) -> &[Generator<F>] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn push(&mut self, g: Generator<F>) {
        assert_eq!(g.surface(), self.surface, "generator on the wrong surface");
        self.gens.push(g);
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &AutWord<F>) -> Result<Self> {
        if other.surface != self.surface {
            return Err(Error::MixedSurfaces);
        }
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(AutWord {
            surface: self.surface,
            gens,
        })
    }

    pub fn inverse(&self) -> Self {
        AutWord {
            surface: self.surface,
            gens: self.gens.iter().rev().map(Generator::inverse).collect(),
        }
    }

    fn check_surface(&self, s: SurfaceKind) -> Result<()> {
        if s != self.surface {
            return Err(Error::MixedSurfaces);
        }
        Ok(())
    }

    pub fn apply_germ(&self, germ: &Germ<F>) -> Result<Germ<F>> {
        self.check_surface(germ.surface)?;
        let mut g = germ.clone();
        for gen in &self.gens {
            g = gen.apply_germ(&g)?;
        }
        Ok(g)
    }

    pub fn apply_point(&self, p: &Point<F>) -> Result<Point<F>> {
        Ok(germ_point(&self.apply_germ(&point_germ(p))?))
    }

    /// Image of a jet: the word is applied to a parametrization of the jet and
    /// the result brought back to canonical graph form.
    pub fn apply_jet(&self, j: &Jet<F>) -> Result<Jet<F>> {
        Jet::from_germ(&self.apply_germ(&j.to_germ())?)
    }

    /// Jacobian of one generator at `p`, column `j` being the derivative along
    /// the `j`-th chart coordinate.
    fn generator_jacobian(gen: &Generator<F>, p: &Point<F>) -> Result<Vec<Vec<F>>> {
        let cols: Vec<Vec<F>> = direction_germs(p)
            .iter()
            .map(|g| gen.apply_germ(g).map(|img| germ_velocity(&img)))
            .collect::<Result<_>>()?;
        let n = cols.len();
        Ok((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
    }

    /// Exact Jacobian at `p` by the chain rule over the generators.
    ///
    /// On the torus the matrix is taken in the affine chart of `p` and of its
    /// image (a factor at infinity uses the inverted coordinate); on the sphere
    /// it is the `3×3` Jacobian of the ambient formula.
    pub fn jacobian_at(&self, p: &Point<F>) -> Result<Vec<Vec<F>>> {
        self.check_surface(p.surface())?;
        let n = match self.surface {
            SurfaceKind::Torus => 2,
            SurfaceKind::Sphere => 3,
        };
        let mut jac = identity_matrix(n);
        let mut here = p.clone();
        for gen in &self.gens {
            let g = Self::generator_jacobian(gen, &here)?;
            jac = mat_mul(&g, &jac);
            here = germ_point(&gen.apply_germ(&point_germ(&here))?);
        }
        Ok(jac)
    }
}

impl<F: OrderedField + fmt::Display> AutWord<F> {
    /// One formula per generator, in application order.
    pub fn formulas(&self) -> Vec<String> {
        self.gens.iter().map(Generator::formula).collect()
    }
}
