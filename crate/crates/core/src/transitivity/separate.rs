use crate::automorphisms::{AutWord, Generator, SphereTwist, TorusFactor, TorusMoebius, TorusTwist};
use crate::error::{Error, Result};
use crate::exactalg::{crt_combine, crt_modulus, OrderedField, Poly, Series, SqrtField};
use crate::surfaces::{standard_center, Axis, Point, SpherePoint, SurfaceKind, TorusPoint};

use super::enumerate::{candidates, rotation_from_half_tangent, SynthOptions};

/// How many admissible fiber rotations are inspected when looking for one
/// that avoids a new square root.
const SQUARE_SEARCH: usize = 200;

fn all_distinct<T: PartialEq>(xs: &[T]) -> bool {
    xs.iter().enumerate().all(|(i, a)| xs[..i].iter().all(|b| b != a))
}

fn already_standard<F: OrderedField>(surface: SurfaceKind, pts: &[Point<F>]) -> bool {
    pts.iter()
        .enumerate()
        .all(|(i, p)| *p == standard_center(surface, i + 1))
}

/// The polynomial of degree `< n` through `(nodes_i, values_i)`.
pub(crate) fn interpolate<F: OrderedField>(nodes: &[F], values: &[F]) -> Result<Poly<F>> {
    let residues: Vec<Series<F>> = nodes
        .iter()
        .zip(values)
        .map(|(n, v)| Series::constant(n.clone(), 1, v.clone()))
        .collect();
    Ok(crt_combine(&residues)?)
}

fn node_modulus<F: OrderedField>(nodes: &[F]) -> Poly<F> {
    let residues: Vec<Series<F>> = nodes
        .iter()
        .map(|n| Series::zero(n.clone(), 1))
        .collect();
    crt_modulus(&residues)
}

/// A twist moving the sheared coordinate by `values_i` over `nodes_i`:
/// `q = 1 + M²`, `p = L + M·s^n` with `M = ∏(s − node_i)` and `L` the interpolant.
fn interpolating_torus_twist<F: OrderedField>(
    shear: TorusFactor,
    nodes: &[F],
    values: &[F],
) -> Result<Option<TorusTwist<F>>> {
    if values.iter().all(F::is_zero) {
        return Ok(None);
    }
    let l = interpolate(nodes, values)?;
    let m = node_modulus(nodes);
    let p = &l + &(&m * &Poly::monomial(F::one(), nodes.len()));
    TorusTwist::one_plus_square(shear, p, &m).map(Some)
}

/// Maps point `i` to `(i + 1, 0)`.
pub fn separate_points_torus<F: OrderedField>(
    points: &[TorusPoint<F>],
    opts: &SynthOptions,
) -> Result<AutWord<F>> {
    if !all_distinct(points) {
        return Err(Error::DuplicatePoints);
    }
    let mut word = AutWord::identity(SurfaceKind::Torus);
    let mut cur: Vec<Point<F>> = points.iter().cloned().map(Point::Torus).collect();
    if already_standard(SurfaceKind::Torus, &cur) {
        return Ok(word);
    }
    let step = |word: &mut AutWord<F>, cur: &mut Vec<Point<F>>, g: Generator<F>| -> Result<()> {
        let w = AutWord::single(g.clone());
        for p in cur.iter_mut() {
            *p = w.apply_point(p)?;
        }
        word.push(g);
        Ok(())
    };

    let mut mats = [[F::one(), F::zero(), F::zero(), F::one()], [F::one(), F::zero(), F::zero(), F::one()]];
    let mut moved = false;
    for (k, mat) in mats.iter_mut().enumerate() {
        if !points.iter().any(|p| p.factor(k).is_infinite()) {
            continue;
        }
        let finite: Vec<F> = points
            .iter()
            .filter_map(|p| p.factor(k).affine().cloned())
            .collect();
        let c = candidates::<F>(opts.enum_limit)
            .find(|c| !finite.contains(c))
            .ok_or(Error::EnumerationExhausted(opts.enum_limit))?;
        *mat = [F::zero(), F::one(), F::one(), -c];
        moved = true;
    }
    if moved {
        let [x, y] = mats;
        step(&mut word, &mut cur, Generator::TorusMoebius(TorusMoebius::new(x, y)?))?;
    }

    let affine = |cur: &[Point<F>]| -> Vec<(F, F)> {
        cur.iter()
            .map(|p| {
                let t = p.as_torus().expect("torus word keeps torus points");
                (t.x.local(), t.y.local())
            })
            .collect()
    };

    let xy = affine(&cur);
    let ys: Vec<F> = xy.iter().map(|(_, y)| y.clone()).collect();
    if !all_distinct(&ys) {
        let mut found = None;
        for k in candidates::<F>(opts.enum_limit) {
            let s = Poly::linear_root(&k);
            let q = &(&s * &s) + &Poly::one();
            let p = &q + &s;
            let shifted: Vec<F> = xy
                .iter()
                .map(|(x, y)| y.clone() + &(p.eval(x) / &q.eval(x)))
                .collect();
            if all_distinct(&shifted) {
                found = Some(TorusTwist::one_plus_square(TorusFactor::Y, p, &s)?);
                break;
            }
        }
        let t = found.ok_or(Error::EnumerationExhausted(opts.enum_limit))?;
        step(&mut word, &mut cur, Generator::TorusTwist(t))?;
    }

    let xy = affine(&cur);
    let ys: Vec<F> = xy.iter().map(|(_, y)| y.clone()).collect();
    let dx: Vec<F> = xy
        .iter()
        .enumerate()
        .map(|(i, (x, _))| F::from_int(i as i64 + 1) - x)
        .collect();
    if let Some(t) = interpolating_torus_twist(TorusFactor::X, &ys, &dx)? {
        step(&mut word, &mut cur, Generator::TorusTwist(t))?;
    }

    let xy = affine(&cur);
    let xs: Vec<F> = xy.iter().map(|(x, _)| x.clone()).collect();
    let dy: Vec<F> = xy.iter().map(|(_, y)| -y.clone()).collect();
    if let Some(t) = interpolating_torus_twist(TorusFactor::Y, &xs, &dy)? {
        step(&mut word, &mut cur, Generator::TorusTwist(t))?;
    }
    Ok(word)
}

/// The rotation of the plane taking `v` to `w`, both of squared length `r2`.
fn rotation_between<F: OrderedField>(v: (&F, &F), w: (&F, &F), r2: &F) -> (F, F) {
    let c = (v.0.clone() * w.0 + &(v.1.clone() * w.1)) / r2;
    let s = (v.0.clone() * w.1 - &(v.1.clone() * w.0)) / r2;
    (c, s)
}

/// A twist about `axis` whose rotation at `nodes_i` is `rots_i = (cos, sin)`.
///
/// `p + i·q = (c₀ + i·s₀)(1 + i·a)²` and `r = 1 + a²`, where `a` interpolates
/// the half-angle tangents of the rotations relative to the offset `(c₀, s₀)`.
/// The offset is enumerated until no relative rotation is a half turn.
pub(crate) fn interpolating_rotation<F: OrderedField>(
    axis: Axis,
    nodes: &[F],
    rots: &[(F, F)],
    opts: &SynthOptions,
) -> Result<Option<SphereTwist<F>>> {
    if rots.iter().all(|(c, s)| c.is_one() && s.is_zero()) {
        return Ok(None);
    }
    for u in candidates::<F>(opts.enum_limit) {
        let (c0, s0) = rotation_from_half_tangent(&u);
        let rel: Vec<(F, F)> = rots
            .iter()
            .map(|(c, s)| {
                (
                    c.clone() * &c0 + &(s.clone() * &s0),
                    s.clone() * &c0 - &(c.clone() * &s0),
                )
            })
            .collect();
        if rel.iter().any(|(c, _)| (F::one() + c).is_zero()) {
            continue;
        }
        let halves: Vec<F> = rel.iter().map(|(c, s)| s.clone() / &(F::one() + c)).collect();
        let a = interpolate(nodes, &halves)?;
        return SphereTwist::from_parameter_offset(axis, c0, s0, &a).map(Some);
    }
    Err(Error::EnumerationExhausted(opts.enum_limit))
}

fn rotate_point<F: OrderedField>(p: &SpherePoint<F>, axis: Axis, c: &F, s: &F) -> SpherePoint<F> {
    let (a, b) = axis.others();
    let mut v = p.coords().clone();
    let (ya, yb) = (v[a.index()].clone(), v[b.index()].clone());
    v[a.index()] = ya.clone() * c - &(yb.clone() * s);
    v[b.index()] = ya * s + &(yb * c);
    let [x, y, z] = v;
    SpherePoint::new(x, y, z).expect("rotations preserve the sphere")
}

/// A constant rotation about `axis`, the first in enumeration order that
/// makes `ok` hold; `None` when the identity already does.
fn constant_rotation<F: OrderedField>(
    pts: &[SpherePoint<F>],
    axis: Axis,
    opts: &SynthOptions,
    ok: impl Fn(&[SpherePoint<F>]) -> bool,
) -> Result<Option<(F, F)>> {
    for u in candidates::<F>(opts.enum_limit) {
        let (c, s) = rotation_from_half_tangent(&u);
        let moved: Vec<SpherePoint<F>> = pts.iter().map(|p| rotate_point(p, axis, &c, &s)).collect();
        if ok(&moved) {
            return Ok(if u.is_zero() { None } else { Some((c, s)) });
        }
    }
    Err(Error::EnumerationExhausted(opts.enum_limit))
}

/// A square root of `v` inside the fields already used: `v` itself a square,
/// or `v·d` a square for a previously adjoined radicand `d`.
fn known_sqrt<F: SqrtField>(v: &F, adjoined: &[(F, F)]) -> Option<F> {
    if let Some(r) = v.sqrt_exact() {
        return Some(r);
    }
    adjoined.iter().find_map(|(d, root)| {
        (v.clone() * d).sqrt_exact().map(|r| r / root)
    })
}

/// Maps point `i` to the `(i + 1)`-th standard center of the sphere.
///
/// 1. Constant rotations about `x` and then `z` make the `x`-coordinates
///    distinct and different from `±1`.
/// 2. A twist fixing `x` turns each point within its circle to a height `ζ_i`,
///    with the `ζ_i` distinct and `ζ_i² ≤ Y_i²`.
/// 3. A twist fixing `z` carries each point to `(X_i, w_i, ζ_i)` with
///    `w_i = √(Y_i² − ζ_i²)`.
/// 4. A twist fixing `x` rotates `(w_i, ζ_i)` to `(Y_i, 0)`.
///
/// Heights are preferred for which `w_i` needs no new square root; otherwise
/// the root is adjoined with [`SqrtField::sqrt_extend`].
pub fn separate_points_sphere<F: SqrtField>(
    points: &[SpherePoint<F>],
    opts: &SynthOptions,
) -> Result<AutWord<F>> {
    if !all_distinct(points) {
        return Err(Error::DuplicatePoints);
    }
    let n = points.len();
    let mut word = AutWord::identity(SurfaceKind::Sphere);
    let as_points: Vec<Point<F>> = points.iter().cloned().map(Point::Sphere).collect();
    if already_standard(SurfaceKind::Sphere, &as_points) {
        return Ok(word);
    }
    let mut cur: Vec<SpherePoint<F>> = points.to_vec();

    let xy_distinct = |ps: &[SpherePoint<F>]| {
        let xy: Vec<(&F, &F)> = ps.iter().map(|p| (p.x(), p.y())).collect();
        all_distinct(&xy)
    };
    if let Some((c, s)) = constant_rotation(&cur, Axis::X, opts, xy_distinct)? {
        cur = cur.iter().map(|p| rotate_point(p, Axis::X, &c, &s)).collect();
        word.push(Generator::SphereTwist(SphereTwist::constant(Axis::X, c, s)?));
    }
    let x_good = |ps: &[SpherePoint<F>]| {
        let xs: Vec<&F> = ps.iter().map(|p| p.x()).collect();
        all_distinct(&xs) && ps.iter().all(|p| !p.x().square().is_one())
    };
    if let Some((c, s)) = constant_rotation(&cur, Axis::Z, opts, x_good)? {
        cur = cur.iter().map(|p| rotate_point(p, Axis::Z, &c, &s)).collect();
        word.push(Generator::SphereTwist(SphereTwist::constant(Axis::Z, c, s)?));
    }

    let targets: Vec<SpherePoint<F>> = (1..=n)
        .map(|i| match standard_center::<F>(SurfaceKind::Sphere, i) {
            Point::Sphere(s) => s,
            Point::Torus(_) => unreachable!(),
        })
        .collect();

    let mut fiber_rots = Vec::with_capacity(n);
    let mut heights: Vec<F> = Vec::with_capacity(n);
    let mut mids: Vec<(F, F)> = Vec::with_capacity(n);
    let mut adjoined: Vec<(F, F)> = Vec::new();
    for (p, t) in cur.iter().zip(&targets) {
        let y2 = t.y().square();
        let mut first = None;
        let mut chosen = None;
        let mut admissible = 0;
        for u in candidates::<F>(opts.enum_limit) {
            let (c, s) = rotation_from_half_tangent(&u);
            let zeta = p.y().clone() * &s + &(p.z().clone() * &c);
            if heights.contains(&zeta) || zeta.square().cmp_exact(&y2).is_gt() {
                continue;
            }
            let slack = y2.clone() - &zeta.square();
            if let Some(w) = known_sqrt(&slack, &adjoined) {
                chosen = Some((c, s, zeta, w));
                break;
            }
            if first.is_none() {
                first = Some((c, s, zeta, slack));
            }
            admissible += 1;
            if admissible >= SQUARE_SEARCH {
                break;
            }
        }
        let (c, s, zeta, w) = match chosen {
            Some(x) => x,
            None => {
                let (c, s, zeta, slack) = first.ok_or(Error::EnumerationExhausted(opts.enum_limit))?;
                let w = slack
                    .sqrt_extend()
                    .ok_or_else(|| Error::NeedsExtension(slack.to_string()))?;
                adjoined.push((slack, w.clone()));
                (c, s, zeta, w)
            }
        };
        let y_mid = p.y().clone() * &c - &(p.z().clone() * &s);
        fiber_rots.push((c, s));
        heights.push(zeta);
        mids.push((y_mid, w));
    }
    let xs: Vec<F> = cur.iter().map(|p| p.x().clone()).collect();
    if let Some(t) = interpolating_rotation(Axis::X, &xs, &fiber_rots, opts)? {
        word.push(Generator::SphereTwist(t));
    }

    let plane_rots: Vec<(F, F)> = cur
        .iter()
        .zip(&targets)
        .zip(mids.iter().zip(&heights))
        .map(|((p, t), ((y_mid, w), zeta))| {
            let r2 = F::one() - &zeta.square();
            rotation_between((p.x(), y_mid), (t.x(), w), &r2)
        })
        .collect();
    if let Some(t) = interpolating_rotation(Axis::Z, &heights, &plane_rots, opts)? {
        word.push(Generator::SphereTwist(t));
    }

    let final_rots: Vec<(F, F)> = targets
        .iter()
        .zip(mids.iter().zip(&heights))
        .map(|(t, ((_, w), zeta))| (w.clone() / t.y(), -zeta.clone() / t.y()))
        .collect();
    let target_xs: Vec<F> = targets.iter().map(|t| t.x().clone()).collect();
    if let Some(t) = interpolating_rotation(Axis::X, &target_xs, &final_rots, opts)? {
        word.push(Generator::SphereTwist(t));
    }
    Ok(word)
}
