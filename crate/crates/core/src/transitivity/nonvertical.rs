use crate::automorphisms::{AutWord, Generator, SphereTwist, TorusFactor, TorusTwist};
use crate::error::{Error, Result};
use crate::exactalg::{OrderedField, Poly};
use crate::surfaces::{Axis, Jet, Point, SurfaceKind};

use super::enumerate::{candidates, SynthOptions};

fn check_torus_axis<F: OrderedField>(jets: &[Jet<F>]) -> Result<()> {
    for j in jets {
        match j.center() {
            Point::Torus(t) if !t.x.is_infinite() && t.y.affine().is_some_and(F::is_zero) => {}
            Point::Torus(_) => {
                return Err(Error::PreconditionFailed("jet center off the line y = 0".into()))
            }
            Point::Sphere(_) => return Err(Error::MixedSurfaces),
        }
    }
    Ok(())
}

/// The slopes `λ = p′(0)` for which the twist `x ↦ x + p(y)/q(y)` leaves some
/// jet vertical: `−a/b` for each tangent `(a, b)` with `b ≠ 0`.
pub fn torus_forbidden_slopes<F: OrderedField>(jets: &[Jet<F>]) -> Result<Vec<F>> {
    check_torus_axis(jets)?;
    let mut out: Vec<F> = Vec::new();
    for j in jets {
        let v = j.tangent_vector().components;
        if !v[1].is_zero() {
            let l = -v[0].clone() / &v[1];
            if !out.contains(&l) {
                out.push(l);
            }
        }
    }
    Ok(out)
}

/// The twist `x ↦ x + (λy + y²)/(1 + y²)`.
pub fn torus_slope_twist<F: OrderedField>(lambda: &F) -> Result<TorusTwist<F>> {
    let p = Poly::new(vec![F::zero(), lambda.clone(), F::one()]);
    let q = Poly::new(vec![F::one(), F::zero(), F::one()]);
    TorusTwist::new(TorusFactor::X, p, q)
}

/// Makes jets centered on `y = 0` non-vertical with a twist fixing that line.
///
/// The slope `λ` is the first enumerated rational outside
/// [`torus_forbidden_slopes`]; `λ = 0` yields the empty word.
pub fn make_nonvertical_torus<F: OrderedField>(
    jets: &[Jet<F>],
    opts: &SynthOptions,
) -> Result<(AutWord<F>, Vec<Jet<F>>)> {
    let forbidden = torus_forbidden_slopes(jets)?;
    let lambda = candidates::<F>(opts.enum_limit)
        .find(|l| !forbidden.contains(l))
        .ok_or(Error::EnumerationExhausted(opts.enum_limit))?;
    if lambda.is_zero() {
        return Ok((AutWord::identity(SurfaceKind::Torus), jets.to_vec()));
    }
    let w = AutWord::single(Generator::TorusTwist(torus_slope_twist(&lambda)?));
    let moved = jets.iter().map(|j| w.apply_jet(j)).collect::<Result<_>>()?;
    Ok((w, moved))
}

/// The twist fixing `z` with `p = (1+z²)² − (λz)²`, `q = 2(1+z²)λz`,
/// `r = (1+z²)² + (λz)²`.
pub fn sphere_lambda_twist<F: OrderedField>(lambda: &F) -> Result<SphereTwist<F>> {
    let one_z2 = Poly::new(vec![F::one(), F::zero(), F::one()]);
    let lz = Poly::monomial(lambda.clone(), 1);
    let a = &one_z2 * &one_z2;
    let b = &lz * &lz;
    let q = (&one_z2 * &lz).scale(&F::from_int(2));
    SphereTwist::new(Axis::Z, &a - &b, q, &a + &b)
}

/// The values of `λ` for which [`sphere_lambda_twist`] leaves some jet
/// vertical. The twist has Jacobian `[[1, 0, −2λy], [0, 1, 2λx], [0, 0, 1]]`
/// on the equator, so a tangent `(a, b, c)` stays vertical exactly when
/// `a − 2λyc = 0` and `b + 2λxc = 0`.
pub fn sphere_forbidden_lambdas<F: OrderedField>(jets: &[Jet<F>]) -> Result<Vec<F>> {
    let mut out: Vec<F> = Vec::new();
    for j in jets {
        let s = match j.center() {
            Point::Sphere(s) if s.on_equator() => s,
            Point::Sphere(_) => return Err(Error::NotOnEquator),
            Point::Torus(_) => return Err(Error::MixedSurfaces),
        };
        let v = j.tangent_vector().components;
        if v[2].is_zero() {
            continue;
        }
        let two_c = v[2].clone() + &v[2];
        let guess = if !s.y().is_zero() {
            v[0].clone() / &(two_c.clone() * s.y())
        } else {
            -v[1].clone() / &(two_c.clone() * s.x())
        };
        let first = v[0].clone() - &(guess.clone() * &two_c * s.y());
        let second = v[1].clone() + &(guess.clone() * &two_c * s.x());
        if first.is_zero() && second.is_zero() && !out.contains(&guess) {
            out.push(guess);
        }
    }
    Ok(out)
}

/// Makes jets centered on the equator non-vertical with the `λ`-family twist.
///
/// `λ` is the first enumerated rational outside [`sphere_forbidden_lambdas`];
/// `λ = 0` yields the empty word.
pub fn make_nonvertical_sphere<F: OrderedField>(
    jets: &[Jet<F>],
    opts: &SynthOptions,
) -> Result<(AutWord<F>, Vec<Jet<F>>)> {
    let forbidden = sphere_forbidden_lambdas(jets)?;
    let lambda = candidates::<F>(opts.enum_limit)
        .find(|l| !forbidden.contains(l))
        .ok_or(Error::EnumerationExhausted(opts.enum_limit))?;
    if lambda.is_zero() {
        return Ok((AutWord::identity(SurfaceKind::Sphere), jets.to_vec()));
    }
    let w = AutWord::single(Generator::SphereTwist(sphere_lambda_twist(&lambda)?));
    let moved = jets.iter().map(|j| w.apply_jet(j)).collect::<Result<_>>()?;
    Ok((w, moved))
}
