use crate::error::{Error, Result};
use crate::exactalg::{Field, OrderedField, Series};

use super::point::{Point, ProjPoint, SpherePoint, SurfaceKind, TorusPoint};

/// A coordinate axis of `R³`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Axis {
        Axis::ALL[i % 3]
    }

    /// The two other axes in cyclic order: `X → (Y, Z)`, `Y → (Z, X)`, `Z → (X, Y)`.
    pub fn others(self) -> (Axis, Axis) {
        let k = self.index();
        (Axis::from_index(k + 1), Axis::from_index(k + 2))
    }

    pub fn name(self) -> &'static str {
        ["x", "y", "z"][self.index()]
    }
}

/// The affine chart and graph variable of a jet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Chart {
    /// The graph is `y = f(x)`, or `x = f(y)` when transposed. A factor
    /// whose point is at infinity is read in the coordinate `1/x` (or `1/y`).
    Torus {
        transposed: bool,
        x_infinite: bool,
        y_infinite: bool,
    },
    /// The graph gives the two other coordinates, in cyclic order, as series in `axis`.
    Sphere { axis: Axis },
}

impl Chart {
    pub fn surface(&self) -> SurfaceKind {
        match self {
            Chart::Torus { .. } => SurfaceKind::Torus,
            Chart::Sphere { .. } => SurfaceKind::Sphere,
        }
    }

    pub fn affine_torus() -> Self {
        Chart::Torus {
            transposed: false,
            x_infinite: false,
            y_infinite: false,
        }
    }
}

/// A parametrized germ `t ↦ point`, truncated modulo `t^e`.
///
/// Torus germs hold homogeneous pairs `[u_x, v_x, u_y, v_y]`; sphere germs hold
/// `[x, y, z]`. Every series is centered at `t = 0`. The jet of the germ is the
/// image of `Spec F[t]/(t^e)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Germ<F> {
    pub surface: SurfaceKind,
    pub coords: Vec<Series<F>>,
}

impl<F: Field> Germ<F> {
    pub fn order(&self) -> usize {
        self.coords[0].order()
    }

    /// Torus factor `k` as `(local coordinate series, at infinity)`.
    fn torus_local(&self, k: usize) -> Result<(Series<F>, bool)> {
        let (a, b) = (&self.coords[2 * k], &self.coords[2 * k + 1]);
        if b.is_unit() {
            Ok((a.div(b)?, false))
        } else if a.is_unit() {
            Ok((b.div(a)?, true))
        } else {
            Err(Error::NotCurvilinear)
        }
    }

    /// Rescales each torus factor so that its unit coordinate is 1.
    pub fn normalized(self) -> Result<Self> {
        if self.surface == SurfaceKind::Sphere {
            return Ok(self);
        }
        let e = self.order();
        let mut coords = Vec::with_capacity(4);
        for k in 0..2 {
            let (l, inf) = self.torus_local(k)?;
            let one = Series::one(F::zero(), e);
            if inf {
                coords.extend([one, l]);
            } else {
                coords.extend([l, one]);
            }
        }
        Ok(Germ {
            surface: self.surface,
            coords,
        })
    }
}

/// A curvilinear infinitely near point of order `e`, in graph form.
///
/// Torus jets carry one series `f`: the ideal is `((s − s₀)^e, w − f(s))` where
/// `s` is the graph variable and `w` the other chart coordinate. Sphere jets
/// carry two series `g, h` for the other two coordinates. The chart is chosen
/// canonically from the tangent direction, so equal jets compare equal.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet<F> {
    order: usize,
    chart: Chart,
    center: Point<F>,
    graph: Vec<Series<F>>,
}

/// The first property a jet fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    ZeroOrder,
    /// Graph has the wrong number of series.
    GraphShape,
    /// A graph series has a different order or center from the jet.
    GraphRing { index: usize },
    /// The stored center disagrees with the graph.
    CenterMismatch,
    /// The chart does not match the center or the tangent direction.
    ChartMismatch,
    /// `s² + g² + h² − 1` has a nonzero coefficient at this power of `(s − s₀)`.
    SphereEquation { degree: usize },
}

/// Tangent direction of a jet: `(a, b)` in the torus chart of the center,
/// `(a, b, c)` in `R³` on the sphere. Zero exactly for order 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentVector<F> {
    pub components: Vec<F>,
}

impl<F: Field> TangentVector<F> {
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }
}

/// Ideal generators affine-linear in the non-graph variables, over series in
/// the graph variable.
///
/// Each row `(coeffs, constant)` stands for `Σ coeffs[j]·w_j + constant`, where
/// `w_j` are the chart coordinates other than the graph variable (one on the
/// torus; two on the sphere, in cyclic order).
#[derive(Clone, Debug)]
pub struct RawIdeal<F> {
    pub chart: Chart,
    pub rows: Vec<(Vec<Series<F>>, Series<F>)>,
}

impl<F: OrderedField> Jet<F> {
    /// Assembles a jet from stored parts without any checks. See [`Jet::validate`].
    pub fn from_parts_unchecked(
        order: usize,
        chart: Chart,
        center: Point<F>,
        graph: Vec<Series<F>>,
    ) -> Self {
        Jet {
            order,
            chart,
            center,
            graph,
        }
    }

    /// An ordinary point viewed as a jet of order 1.
    pub fn point(p: Point<F>) -> Self {
        let (chart, graph) = match &p {
            Point::Torus(t) => (
                Chart::Torus {
                    transposed: false,
                    x_infinite: t.x.is_infinite(),
                    y_infinite: t.y.is_infinite(),
                },
                vec![Series::constant(t.x.local(), 1, t.y.local())],
            ),
            Point::Sphere(s) => {
                let [x, y, z] = s.coords().clone();
                (
                    Chart::Sphere { axis: Axis::X },
                    vec![Series::constant(x.clone(), 1, y), Series::constant(x, 1, z)],
                )
            }
        };
        Jet {
            order: 1,
            chart,
            center: p,
            graph,
        }
    }

    /// The affine torus jet `((x − x₀)^e, y − f)`, where `x₀` is the center of `f`.
    pub fn torus_graph(f: Series<F>) -> Self {
        let center = Point::torus(f.center().clone(), f.constant_term().clone());
        Jet {
            order: f.order(),
            chart: Chart::affine_torus(),
            center,
            graph: vec![f],
        }
    }

    /// The affine torus jet `((y − y₀)^e, x − f)`, brought to canonical form.
    pub fn torus_graph_transposed(f: Series<F>) -> Result<Self> {
        let center = Point::torus(f.constant_term().clone(), f.center().clone());
        let raw = Jet {
            order: f.order(),
            chart: Chart::Torus {
                transposed: true,
                x_infinite: false,
                y_infinite: false,
            },
            center,
            graph: vec![f],
        };
        Jet::from_germ(&raw.to_germ())
    }

    /// The sphere jet with graph `(g, h)` over `axis`, brought to canonical form.
    pub fn sphere_graph(axis: Axis, g: Series<F>, h: Series<F>) -> Result<Self> {
        let mut c = [F::zero(), F::zero(), F::zero()];
        let (a, b) = axis.others();
        c[axis.index()] = g.center().clone();
        c[a.index()] = g.constant_term().clone();
        c[b.index()] = h.constant_term().clone();
        let [x, y, z] = c;
        let raw = Jet {
            order: g.order(),
            chart: Chart::Sphere { axis },
            center: Point::Sphere(SpherePoint::new_unchecked([x, y, z])),
            graph: vec![g, h],
        };
        if let Err(v) = raw.check_sphere_equation() {
            return Err(Error::PreconditionFailed(format!("{v:?}")));
        }
        Jet::from_germ(&raw.to_germ())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn center(&self) -> &Point<F> {
        &self.center
    }

    pub fn surface(&self) -> SurfaceKind {
        self.center.surface()
    }

    /// The graph series: `[f]` on the torus, `[g, h]` on the sphere.
    pub fn graph(&self) -> &[Series<F>] {
        &self.graph
    }

    /// A parametrization of the jet by `t = s − s₀`.
    pub fn to_germ(&self) -> Germ<F> {
        let e = self.order;
        let s0 = self.graph[0].center().clone();
        let mut var = Series::variable(F::zero(), e);
        var = &var + &Series::constant(F::zero(), e, s0);
        let rest: Vec<Series<F>> = self
            .graph
            .iter()
            .map(|g| g.recenter(F::zero()))
            .collect();
        match self.chart {
            Chart::Torus {
                transposed,
                x_infinite,
                y_infinite,
            } => {
                let (lx, ly) = if transposed {
                    (rest[0].clone(), var)
                } else {
                    (var, rest[0].clone())
                };
                let one = Series::one(F::zero(), e);
                let hom = |l: Series<F>, inf: bool| {
                    if inf {
                        [one.clone(), l]
                    } else {
                        [l, one.clone()]
                    }
                };
                let mut coords = Vec::with_capacity(4);
                coords.extend(hom(lx, x_infinite));
                coords.extend(hom(ly, y_infinite));
                Germ {
                    surface: SurfaceKind::Torus,
                    coords,
                }
            }
            Chart::Sphere { axis } => {
                let (a, b) = axis.others();
                let mut coords = vec![Series::zero(F::zero(), e); 3];
                coords[axis.index()] = var;
                coords[a.index()] = rest[0].clone();
                coords[b.index()] = rest[1].clone();
                Germ {
                    surface: SurfaceKind::Sphere,
                    coords,
                }
            }
        }
    }

    /// The jet parametrized by a germ, in canonical graph form.
    ///
    /// The graph variable is the first chart coordinate with a nonzero
    /// derivative; the germ is reparametrized by that coordinate through
    /// series reversion.
    pub fn from_germ(germ: &Germ<F>) -> Result<Self> {
        let e = germ.order();
        let (locals, chart_of, center) = match germ.surface {
            SurfaceKind::Torus => {
                let (lx, xi) = germ.torus_local(0)?;
                let (ly, yi) = germ.torus_local(1)?;
                let proj = |l: &Series<F>, inf: bool| {
                    if inf {
                        ProjPoint::infinity()
                    } else {
                        ProjPoint::finite(l.constant_term().clone())
                    }
                };
                let center = Point::Torus(TorusPoint::new(proj(&lx, xi), proj(&ly, yi)));
                (vec![lx, ly], Some((xi, yi)), center)
            }
            SurfaceKind::Sphere => {
                let c: Vec<F> = germ
                    .coords
                    .iter()
                    .map(|s| s.constant_term().clone())
                    .collect();
                let [x, y, z]: [F; 3] = c.try_into().map_err(|_| Error::NotCurvilinear)?;
                let center = Point::Sphere(SpherePoint::new(x, y, z)?);
                (germ.coords.clone(), None, center)
            }
        };
        let var = if e == 1 {
            0
        } else {
            locals
                .iter()
                .position(|l| !l.coeff(1).is_zero())
                .ok_or(Error::NotCurvilinear)?
        };
        let s0 = locals[var].constant_term().clone();
        let reparam = if e == 1 {
            Series::zero(F::zero(), 1)
        } else {
            let mut shifted = locals[var].clone();
            let c = shifted.coeffs()[0].clone();
            shifted = &shifted - &Series::constant(F::zero(), e, c);
            shifted.reversion()?
        };
        let n = locals.len();
        let graph: Vec<Series<F>> = (1..n)
            .map(|k| locals[(var + k) % n].compose(&reparam).recenter(s0.clone()))
            .collect();
        let chart = match chart_of {
            Some((x_infinite, y_infinite)) => Chart::Torus {
                transposed: var == 1,
                x_infinite,
                y_infinite,
            },
            None => Chart::Sphere {
                axis: Axis::from_index(var),
            },
        };
        Ok(Jet {
            order: e,
            chart,
            center,
            graph,
        })
    }

    fn check_sphere_equation(&self) -> Result<(), Violation> {
        let var = Series::variable(self.graph[0].center().clone(), self.order);
        let sum = &(&var * &var) + &(&(&self.graph[0] * &self.graph[0]) + &(&self.graph[1] * &self.graph[1]));
        let defect = &sum - &Series::one(var.center().clone(), self.order);
        match defect.valuation() {
            k if k == self.order => Ok(()),
            degree => Err(Violation::SphereEquation { degree }),
        }
    }

    /// Checks every structural invariant and reports the first failure.
    pub fn validate(&self) -> Result<(), Violation> {
        if self.order == 0 {
            return Err(Violation::ZeroOrder);
        }
        let expected = match self.chart {
            Chart::Torus { .. } => 1,
            Chart::Sphere { .. } => 2,
        };
        if self.graph.len() != expected || self.chart.surface() != self.surface() {
            return Err(Violation::GraphShape);
        }
        let s0 = self.graph[0].center();
        for (index, g) in self.graph.iter().enumerate() {
            if g.order() != self.order || g.center() != s0 {
                return Err(Violation::GraphRing { index });
            }
        }
        if let Chart::Sphere { .. } = self.chart {
            self.check_sphere_equation()?;
        }
        match (self.chart, &self.center) {
            (
                Chart::Torus {
                    x_infinite,
                    y_infinite,
                    ..
                },
                Point::Torus(t),
            ) => {
                if t.x.is_infinite() != x_infinite || t.y.is_infinite() != y_infinite {
                    return Err(Violation::ChartMismatch);
                }
            }
            (Chart::Sphere { .. }, Point::Sphere(_)) => {}
            _ => return Err(Violation::GraphShape),
        }
        let canonical = Jet::from_germ(&self.to_germ()).map_err(|_| Violation::ChartMismatch)?;
        if canonical.center != self.center {
            return Err(Violation::CenterMismatch);
        }
        if canonical.chart != self.chart {
            return Err(Violation::ChartMismatch);
        }
        Ok(())
    }

    /// The tangent direction, read off the length-2 truncation of the graph.
    pub fn tangent_vector(&self) -> TangentVector<F> {
        let n = match self.chart {
            Chart::Torus { .. } => 2,
            Chart::Sphere { .. } => 3,
        };
        let mut components = vec![F::zero(); n];
        if self.order < 2 {
            return TangentVector { components };
        }
        let var = match self.chart {
            Chart::Torus { transposed, .. } => usize::from(transposed),
            Chart::Sphere { axis } => axis.index(),
        };
        components[var] = F::one();
        for (k, g) in self.graph.iter().enumerate() {
            components[(var + 1 + k) % n] = g.coeff(1).clone();
        }
        TangentVector { components }
    }

    /// Whether the jet is tangent to a vertical fiber `{x} × P¹` (torus) or to
    /// the great circle through the North pole (sphere, equator centers only).
    pub fn is_vertical(&self) -> Result<bool> {
        match (&self.center, self.chart) {
            (Point::Torus(_), Chart::Torus { transposed, .. }) => Ok(self.order >= 2 && transposed),
            (Point::Sphere(s), _) => {
                if !s.on_equator() {
                    return Err(Error::NotOnEquator);
                }
                let v = self.tangent_vector();
                Ok(self.order >= 2 && v.components[0].is_zero() && v.components[1].is_zero())
            }
            _ => Err(Error::NotCurvilinear),
        }
    }

    /// The reduction of the jet to a lower order.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        assert!(order >= 1 && order <= self.order);
        let germ = self.to_germ();
        let coords = germ.coords.iter().map(|s| s.truncate(order)).collect();
        Jet::from_germ(&Germ {
            surface: germ.surface,
            coords,
        })
    }
}

/// Solves the raw generators for the non-graph coordinates and returns the
/// canonical jet of the ideal.
pub fn jet_canonicalize<F: OrderedField>(raw: &RawIdeal<F>) -> Result<Jet<F>> {
    let rows = &raw.rows;
    let first = &rows.first().ok_or(Error::NotCurvilinear)?.1;
    for (cs, c) in rows {
        if !c.same_ring(first) || cs.iter().any(|s| !s.same_ring(first)) {
            return Err(Error::Alg(crate::exactalg::AlgError::SeriesMismatch));
        }
    }
    let graph = match raw.chart {
        Chart::Torus { .. } => {
            let [(cs, c)] = rows.as_slice() else {
                return Err(Error::NotCurvilinear);
            };
            let [alpha] = cs.as_slice() else {
                return Err(Error::NotCurvilinear);
            };
            let inv = alpha.invert().map_err(|_| Error::NotCurvilinear)?;
            vec![-(c * &inv)]
        }
        Chart::Sphere { .. } => {
            let [(c1, k1), (c2, k2)] = rows.as_slice() else {
                return Err(Error::NotCurvilinear);
            };
            let ([a1, b1], [a2, b2]) = (c1.as_slice(), c2.as_slice()) else {
                return Err(Error::NotCurvilinear);
            };
            let det = &(a1 * b2) - &(b1 * a2);
            let inv = det.invert().map_err(|_| Error::NotCurvilinear)?;
            // a1·w1 + b1·w2 = −k1, a2·w1 + b2·w2 = −k2
            let w1 = &(&(b1 * k2) - &(b2 * k1)) * &inv;
            let w2 = &(&(a2 * k1) - &(a1 * k2)) * &inv;
            vec![w1, w2]
        }
    };
    let center = match raw.chart {
        Chart::Torus {
            transposed,
            x_infinite,
            y_infinite,
        } => {
            let s = graph[0].center().clone();
            let w = graph[0].constant_term().clone();
            let (lx, ly) = if transposed { (w, s) } else { (s, w) };
            let proj = |l: F, inf: bool| {
                if inf {
                    if !l.is_zero() {
                        return Err(Error::NotCurvilinear);
                    }
                    Ok(ProjPoint::infinity())
                } else {
                    Ok(ProjPoint::finite(l))
                }
            };
            Point::Torus(TorusPoint::new(proj(lx, x_infinite)?, proj(ly, y_infinite)?))
        }
        Chart::Sphere { axis } => {
            let mut c = [F::zero(), F::zero(), F::zero()];
            let (a, b) = axis.others();
            c[axis.index()] = graph[0].center().clone();
            c[a.index()] = graph[0].constant_term().clone();
            c[b.index()] = graph[1].constant_term().clone();
            let [x, y, z] = c;
            Point::Sphere(SpherePoint::new(x, y, z)?)
        }
    };
    let raw_jet = Jet {
        order: first.order(),
        chart: raw.chart,
        center,
        graph,
    };
    if let Chart::Sphere { .. } = raw.chart {
        if let Err(v) = raw_jet.check_sphere_equation() {
            return Err(Error::PreconditionFailed(format!("{v:?}")));
        }
    }
    Jet::from_germ(&raw_jet.to_germ())
}

/// Whether the reduced centers are pairwise distinct.
pub fn jets_mutually_distant<F: OrderedField>(js: &[Jet<F>]) -> Result<bool> {
    if let Some(first) = js.first() {
        if js.iter().any(|j| j.surface() != first.surface()) {
            return Err(Error::MixedSurfaces);
        }
    }
    Ok(js
        .iter()
        .enumerate()
        .all(|(i, a)| js[..i].iter().all(|b| b.center != a.center)))
}
