use super::*;
use crate::error::Error;
use crate::exactalg::{rat, Poly, Rational, Series};
use crate::surfaces::{Axis, Jet, Point, ProjPoint, SurfaceKind, TorusPoint};

type P = Poly<Rational>;

fn q(n: i64) -> Rational {
    rat(n, 1)
}

fn twist_2x2() -> AutWord<Rational> {
    let g = certify_twist(Candidate::TorusTwist {
        shear: TorusFactor::Y,
        p: P::from_ints(&[0, 0, 2]),
        q: P::from_ints(&[1, 0, 1]),
    })
    .unwrap();
    AutWord::single(g)
}

fn lambda_family(lambda: i64) -> SphereTwist<Rational> {
    let z = P::x();
    let one_z2 = P::from_ints(&[1, 0, 1]);
    let lz = z.scale(&q(lambda));
    let p = &(&one_z2 * &one_z2) - &(&lz * &lz);
    let qq = &(&one_z2 * &lz).scale(&q(2)) + &P::zero();
    let r = &(&one_z2 * &one_z2) + &(&lz * &lz);
    SphereTwist::new(Axis::Z, p, qq, r).unwrap()
}

#[test]
fn certify_examples() {
    assert!(matches!(twist_2x2().generators()[0], Generator::TorusTwist(_)));
    let a = P::x();
    let s = SphereTwist::<Rational>::from_parameter(Axis::X, &a).unwrap();
    assert_eq!(s.p(), &P::from_ints(&[1, 0, -1]));
    assert!(matches!(&s.certificate().witness, Witness::RotationParameter { .. }));
    let t = SphereTwist::new(Axis::X, s.p().clone(), s.q().clone(), s.r().clone()).unwrap();
    assert!(matches!(&t.certificate().witness, Witness::Sturm(c) if c.roots == 0));
    assert_eq!((t.p(), t.q(), t.r()), (s.p(), s.q(), s.r()));
    let bad = certify_twist(Candidate::TorusTwist {
        shear: TorusFactor::Y,
        p: P::x(),
        q: P::from_ints(&[-1, 0, 1]),
    });
    match bad {
        Err(Error::RootInForbiddenRegion { lo, hi, .. }) => {
            assert!(!lo.is_empty() && !hi.is_empty());
        }
        other => panic!("expected a root witness, got {other:?}"),
    }
    let unequal = TorusTwist::new(TorusFactor::Y, P::x(), P::from_ints(&[1, 0, 1]));
    assert_eq!(unequal, Err(Error::DegreeMismatch(Some(1), Some(2))));
    let broken = SphereTwist::new(Axis::X, P::x(), P::one(), P::one());
    assert_eq!(broken, Err(Error::IdentityFails));
    let vanishing = SphereTwist::new(Axis::X, P::zero(), P::x(), P::x());
    assert!(matches!(vanishing, Err(Error::RootInForbiddenRegion { .. })));
    assert_eq!(
        TorusMoebius::new([q(1), q(2), q(2), q(4)], [q(1), q(0), q(0), q(1)]),
        Err(Error::SingularMatrix)
    );
}

#[test]
fn apply_point_examples() {
    let w = twist_2x2();
    assert_eq!(
        w.apply_point(&Point::torus(q(1), q(0))).unwrap(),
        Point::torus(q(1), q(1))
    );
    let id = AutWord::<Rational>::identity(SurfaceKind::Torus);
    let p = Point::torus(q(5), rat(-2, 3));
    assert_eq!(id.apply_point(&p).unwrap(), p);
    let s = AutWord::single(Generator::SphereTwist(
        SphereTwist::from_parameter(Axis::X, &P::x()).unwrap(),
    ));
    let e = Point::sphere(q(0), q(1), q(0)).unwrap();
    assert_eq!(s.apply_point(&e).unwrap(), e);
}

#[test]
fn twist_reaches_infinity_and_back() {
    let w = twist_2x2();
    let inf = Point::Torus(TorusPoint::new(ProjPoint::infinity(), ProjPoint::finite(q(0))));
    // q̄ = x0² + x1², p̄ = 2x0²: at x = ∞ the shift is 2.
    assert_eq!(
        w.apply_point(&inf).unwrap(),
        Point::Torus(TorusPoint::new(ProjPoint::infinity(), ProjPoint::finite(q(2))))
    );
    let vert = Point::Torus(TorusPoint::new(ProjPoint::finite(q(1)), ProjPoint::infinity()));
    assert_eq!(w.apply_point(&vert).unwrap(), vert);
}

#[test]
fn apply_jet_examples() {
    let w = twist_2x2();
    let j2 = Jet::torus_graph(Series::zero(q(0), 2));
    assert_eq!(w.apply_jet(&j2).unwrap(), j2);
    let j3 = Jet::torus_graph(Series::zero(q(0), 3));
    let expect = Jet::torus_graph(Series::new(q(0), vec![q(0), q(0), q(2)]));
    assert_eq!(w.apply_jet(&j3).unwrap(), expect);
    let id = AutWord::identity(SurfaceKind::Torus);
    assert_eq!(id.apply_jet(&expect).unwrap(), expect);
}

#[test]
fn inverse_examples() {
    let w = twist_2x2();
    let inv = w.inverse();
    match &inv.generators()[0] {
        Generator::TorusTwist(t) => {
            assert_eq!(t.p(), &P::from_ints(&[0, 0, -2]));
            assert_eq!(t.q(), &P::from_ints(&[1, 0, 1]));
        }
        _ => unreachable!(),
    }
    let s = SphereTwist::<Rational>::from_parameter(Axis::Y, &P::from_ints(&[1, 2])).unwrap();
    let si = s.inverse();
    assert_eq!(si.q(), &-s.q());
    let w = AutWord::single(Generator::SphereTwist(s));
    let pts = [
        (rat(1, 3), rat(2, 3), rat(2, 3)),
        (rat(3, 5), rat(4, 5), q(0)),
        (q(0), q(0), q(-1)),
        (rat(2, 7), rat(-3, 7), rat(6, 7)),
        (rat(-12, 13), q(0), rat(5, 13)),
    ];
    for (x, y, z) in pts {
        let p = Point::sphere(x, y, z).unwrap();
        let back = w.inverse().apply_point(&w.apply_point(&p).unwrap()).unwrap();
        assert_eq!(back, p);
    }
    assert!(AutWord::<Rational>::identity(SurfaceKind::Sphere).inverse().is_empty());
}

#[test]
fn jacobian_examples() {
    let t = TorusTwist::new(TorusFactor::X, P::from_ints(&[0, 3, 1]), P::from_ints(&[1, 0, 1])).unwrap();
    let w = AutWord::single(Generator::TorusTwist(t));
    let jac = w.jacobian_at(&Point::torus(q(2), q(0))).unwrap();
    assert_eq!(jac, vec![vec![q(1), q(3)], vec![q(0), q(1)]]);

    let w = AutWord::single(Generator::SphereTwist(lambda_family(1)));
    let c = Point::sphere(rat(3, 5), rat(4, 5), q(0)).unwrap();
    let jac = w.jacobian_at(&c).unwrap();
    assert_eq!(
        jac,
        vec![
            vec![q(1), q(0), rat(-8, 5)],
            vec![q(0), q(1), rat(6, 5)],
            vec![q(0), q(0), q(1)]
        ]
    );
    let id = AutWord::<Rational>::identity(SurfaceKind::Sphere);
    assert_eq!(
        id.jacobian_at(&c).unwrap(),
        vec![
            vec![q(1), q(0), q(0)],
            vec![q(0), q(1), q(0)],
            vec![q(0), q(0), q(1)]
        ]
    );
}

#[test]
fn preservation_defect_vanishes() {
    for l in -3..=3 {
        assert!(lambda_family(l).preservation_defect().iter().all(Poly::is_zero));
    }
}

#[test]
fn formulas_render() {
    let f = twist_2x2().formulas();
    assert_eq!(f, vec!["(x, y) -> (x, y + (2*x^2)/(x^2 + 1))".to_string()]);
}

#[test]
fn stored_witnesses_are_rechecked() {
    let s = P::from_ints(&[1, 2]);
    let t = TorusTwist::one_plus_square(TorusFactor::X, P::from_ints(&[3, 0, 1]), &s).unwrap();
    let witness = t.certificate().witness.clone();
    let back = TorusTwist::with_witness(TorusFactor::X, t.p().clone(), t.q().clone(), witness.clone()).unwrap();
    assert_eq!(back, t);
    let wrong = TorusTwist::with_witness(TorusFactor::X, t.p().clone(), P::from_ints(&[2, 4, 5]), witness);
    assert!(matches!(wrong, Err(Error::PreconditionFailed(_))));

    let sp = SphereTwist::from_parameter_offset(Axis::Y, rat(3, 5), rat(-4, 5), &P::from_ints(&[0, 1, 1])).unwrap();
    let witness = sp.certificate().witness.clone();
    let back = SphereTwist::with_witness(Axis::Y, sp.p().clone(), sp.q().clone(), sp.r().clone(), witness.clone());
    assert_eq!(back.unwrap(), sp);
    let wrong = SphereTwist::with_witness(Axis::Y, sp.q().clone(), sp.p().clone(), sp.r().clone(), witness);
    assert!(matches!(wrong, Err(Error::PreconditionFailed(_))));

    let inv = sp.inverse();
    let rebuilt = SphereTwist::with_witness(
        Axis::Y,
        inv.p().clone(),
        inv.q().clone(),
        inv.r().clone(),
        inv.certificate().witness.clone(),
    );
    assert_eq!(rebuilt.unwrap(), inv);

    let sturm = SphereTwist::new(Axis::Y, sp.p().clone(), sp.q().clone(), sp.r().clone()).unwrap();
    let again = sturm.certificate().witness.clone();
    assert!(SphereTwist::with_witness(Axis::Y, sp.p().clone(), sp.q().clone(), sp.r().clone(), again).is_ok());
}
