use crate::automorphisms::{AutWord, Generator, SphereTwist, TorusFactor, TorusTwist};
use crate::error::{Error, Result};
use crate::exactalg::{crt_combine, crt_modulus, Poly, Series, SqrtField};
use crate::surfaces::{jets_mutually_distant, sqrt_one_minus_square, Axis, Chart, Jet, Point, SurfaceKind};

use super::enumerate::SynthOptions;
use super::nonvertical::{make_nonvertical_sphere, make_nonvertical_torus};
use super::rotation::solve_rotation_parameter;
use super::separate::{separate_points_sphere, separate_points_torus};

fn check_targets<F: SqrtField>(surface: SurfaceKind, targets: &[Jet<F>]) -> Result<()> {
    for t in targets {
        if t.surface() != surface {
            return Err(Error::MixedSurfaces);
        }
        t.validate()
            .map_err(|v| Error::PreconditionFailed(format!("invalid jet: {v:?}")))?;
    }
    if !jets_mutually_distant(targets)? {
        return Err(Error::NotDistant);
    }
    Ok(())
}

fn internal(msg: &str) -> Error {
    Error::PreconditionFailed(format!("internal: {msg}"))
}

/// A word taking the standard torus jets of the targets' orders to the targets.
///
/// The centers are separated onto `(i, 0)`, the jets made non-vertical, and a
/// last twist `y ↦ y + p(x)/q(x)` reproduces the graphs `f_i`: `q = 1 + M²`
/// and `p ≡ f_i` modulo `(x − i)^{e_i}`, padded by `M·x^{deg M}`.
pub fn synth_torus<F: SqrtField>(targets: &[Jet<F>], opts: &SynthOptions) -> Result<AutWord<F>> {
    check_targets(SurfaceKind::Torus, targets)?;
    let centers = targets
        .iter()
        .map(|t| t.center().as_torus().cloned().ok_or(Error::MixedSurfaces))
        .collect::<Result<Vec<_>>>()?;
    let sep = separate_points_torus(&centers, opts)?;
    let placed = targets.iter().map(|t| sep.apply_jet(t)).collect::<Result<Vec<_>>>()?;
    let (nv, flat) = make_nonvertical_torus(&placed, opts)?;
    let residues = flat
        .iter()
        .map(|j| match j.chart() {
            Chart::Torus {
                transposed: false,
                x_infinite: false,
                y_infinite: false,
            } => Ok(j.graph()[0].clone()),
            _ => Err(internal("non-vertical jet expected")),
        })
        .collect::<Result<Vec<Series<F>>>>()?;
    let mut word = AutWord::identity(SurfaceKind::Torus);
    if residues.iter().any(|f| !f.is_zero()) {
        let c = crt_combine(&residues)?;
        let m = crt_modulus(&residues);
        let deg = m.degree().unwrap_or(0);
        let p = &c + &(&m * &Poly::monomial(F::one(), deg));
        word.push(Generator::TorusTwist(TorusTwist::one_plus_square(TorusFactor::Y, p, &m)?));
    }
    word.then(&nv.inverse())?.then(&sep.inverse())
}

/// A word taking the standard sphere jets of the targets' orders to the targets.
///
/// After separation and the non-verticality move each jet is a graph
/// `(y, z) = (g_i, h_i)` over `x`; the rotation parameters `a_i` solving the
/// congruences against `f_i = √(1 − x²)` are glued by CRT into `a`, and the
/// twist `(1 − a², 2a, 1 + a²)` fixing `x` is prepended.
pub fn synth_sphere<F: SqrtField>(targets: &[Jet<F>], opts: &SynthOptions) -> Result<AutWord<F>> {
    check_targets(SurfaceKind::Sphere, targets)?;
    let centers = targets
        .iter()
        .map(|t| t.center().as_sphere().cloned().ok_or(Error::MixedSurfaces))
        .collect::<Result<Vec<_>>>()?;
    let sep = separate_points_sphere(&centers, opts)?;
    let placed = targets.iter().map(|t| sep.apply_jet(t)).collect::<Result<Vec<_>>>()?;
    let (nv, flat) = make_nonvertical_sphere(&placed, opts)?;
    let params = flat
        .iter()
        .map(|j| {
            let (Chart::Sphere { axis: Axis::X }, Point::Sphere(c)) = (j.chart(), j.center()) else {
                return Err(internal("non-vertical jet expected"));
            };
            let f = sqrt_one_minus_square(c.x(), c.y(), j.order());
            solve_rotation_parameter(&f, &j.graph()[0], &j.graph()[1])
        })
        .collect::<Result<Vec<Series<F>>>>()?;
    let mut word = AutWord::identity(SurfaceKind::Sphere);
    let a = crt_combine(&params)?;
    if !a.is_zero() {
        word.push(Generator::SphereTwist(SphereTwist::from_parameter(Axis::X, &a)?));
    }
    word.then(&nv.inverse())?.then(&sep.inverse())
}

/// [`synth_torus`] or [`synth_sphere`] according to `surface`.
pub fn synth<F: SqrtField>(surface: SurfaceKind, targets: &[Jet<F>], opts: &SynthOptions) -> Result<AutWord<F>> {
    match surface {
        SurfaceKind::Torus => synth_torus(targets, opts),
        SurfaceKind::Sphere => synth_sphere(targets, opts),
    }
}

/// A word fixing every pinned jet and taking `from[j]` to `to[j]`.
///
/// Both `pinned ++ from` and `pinned ++ to` are synthesized from the same
/// standard configuration; the answer is the first word inverted, then the second.
pub fn synth_pair<F: SqrtField>(
    surface: SurfaceKind,
    from: &[Jet<F>],
    to: &[Jet<F>],
    pinned: &[Jet<F>],
    opts: &SynthOptions,
) -> Result<AutWord<F>> {
    let orders = |js: &[Jet<F>]| js.iter().map(Jet::order).collect::<Vec<_>>();
    if orders(from) != orders(to) {
        return Err(Error::OrderMismatch(orders(from), orders(to)));
    }
    let source: Vec<Jet<F>> = pinned.iter().chain(from).cloned().collect();
    let target: Vec<Jet<F>> = pinned.iter().chain(to).cloned().collect();
    let w1 = synth(surface, &source, opts)?;
    let w2 = synth(surface, &target, opts)?;
    w1.inverse().then(&w2)
}
