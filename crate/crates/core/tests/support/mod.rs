#![allow(dead_code)]

use jetmove::automorphisms::{AutWord, Generator, SphereTwist, TorusFactor, TorusMoebius, TorusTwist};
use jetmove::exactalg::{rat, OrderedField, Poly, Rational, Series};
use jetmove::surfaces::{Axis, Germ, Jet, Point, ProjPoint, SpherePoint, SurfaceKind, TorusPoint};
use jetmove::transitivity::sphere_lambda_twist;
use jetmove::Scalar;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub type P = Poly<Rational>;

pub fn q(n: i64) -> Rational {
    rat(n, 1)
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn rational(rng: &mut StdRng, height: i64) -> Rational {
    rat(rng.gen_range(-height..=height), rng.gen_range(1..=height))
}

pub fn nonzero_rational(rng: &mut StdRng, height: i64) -> Rational {
    loop {
        let r = rational(rng, height);
        if r != rat(0, 1) {
            return r;
        }
    }
}

/// Orders `e_1, …, e_ℓ` with `ℓ ≤ max_len` and `Σ e_i ≤ max_total`.
pub fn partition(rng: &mut StdRng, max_len: usize, max_total: usize) -> Vec<usize> {
    let len = rng.gen_range(1..=max_len.min(max_total));
    let mut parts = vec![1; len];
    let mut spare = rng.gen_range(0..=max_total - len);
    while spare > 0 {
        let k = rng.gen_range(0..len);
        parts[k] += 1;
        spare -= 1;
    }
    parts
}

/// A truncated series in `t` with the given constant term and random tail.
fn tail<F: OrderedField + From<Rational>>(rng: &mut StdRng, c0: F, first: F, e: usize) -> Series<F> {
    let mut coeffs = vec![c0];
    if e > 1 {
        coeffs.push(first);
    }
    for _ in 2..e {
        coeffs.push(F::from(rational(rng, 4)));
    }
    Series::with_order(F::zero(), coeffs, e)
}

/// Two first-order coefficients, not both zero, sometimes with one vanishing.
fn velocity(rng: &mut StdRng) -> (Rational, Rational) {
    match rng.gen_range(0..4) {
        0 => (rat(0, 1), nonzero_rational(rng, 4)),
        1 => (nonzero_rational(rng, 4), rat(0, 1)),
        _ => (nonzero_rational(rng, 4), nonzero_rational(rng, 4)),
    }
}

/// A random torus jet of order `e`; each factor is at infinity with probability 1/8.
pub fn torus_jet<F: OrderedField + From<Rational>>(rng: &mut StdRng, e: usize) -> Jet<F> {
    let (vx, vy) = velocity(rng);
    let mut coords = Vec::with_capacity(4);
    for v in [vx, vy] {
        let one = Series::one(F::zero(), e);
        if rng.gen_range(0..8) == 0 {
            let l = tail(rng, F::zero(), F::from(v), e);
            coords.extend([one, l]);
        } else {
            let c0 = F::from(rational(rng, 5));
            let l = tail(rng, c0, F::from(v), e);
            coords.extend([l, one]);
        }
    }
    let germ = Germ {
        surface: SurfaceKind::Torus,
        coords,
    };
    Jet::from_germ(&germ).expect("random torus germ is curvilinear")
}

/// A random sphere jet of order `e`: the inverse stereographic image of a
/// random planar germ `(u(t), v(t))`.
pub fn sphere_jet<F: OrderedField + From<Rational>>(rng: &mut StdRng, e: usize) -> Jet<F> {
    let (vu, vv) = velocity(rng);
    let (u0, v0) = (F::from(rational(rng, 3)), F::from(rational(rng, 3)));
    let u: Series<F> = tail(rng, u0, F::from(vu), e);
    let v: Series<F> = tail(rng, v0, F::from(vv), e);
    let one = Series::one(F::zero(), e);
    let n2 = &(&u * &u) + &(&v * &v);
    let den = (&n2 + &one).invert().expect("1 + u² + v² is a unit");
    let two = F::from_int(2);
    let coords = vec![
        &u.scale(&two) * &den,
        &v.scale(&two) * &den,
        &(&n2 - &one) * &den,
    ];
    let germ = Germ {
        surface: SurfaceKind::Sphere,
        coords,
    };
    Jet::from_germ(&germ).expect("random sphere germ is curvilinear")
}

/// Random mutually distant jets with the given orders.
pub fn distant_jets<F: OrderedField + From<Rational>>(
    rng: &mut StdRng,
    surface: SurfaceKind,
    orders: &[usize],
) -> Vec<Jet<F>> {
    let mut out: Vec<Jet<F>> = Vec::with_capacity(orders.len());
    for &e in orders {
        loop {
            let j = match surface {
                SurfaceKind::Torus => torus_jet(rng, e),
                SurfaceKind::Sphere => sphere_jet(rng, e),
            };
            if out.iter().all(|o| o.center() != j.center()) {
                out.push(j);
                break;
            }
        }
    }
    out
}

pub fn scalar(r: Rational) -> Scalar {
    Scalar::from(r)
}

/// Sparse multivariate polynomial over the rationals, keyed by exponent vectors.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct MPoly {
    pub terms: std::collections::BTreeMap<Vec<u32>, Rational>,
}

impl MPoly {
    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut m = MPoly::default();
        m.add_term(vec![0; nvars], c);
        m
    }

    pub fn var(nvars: usize, k: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[k] = 1;
        let mut m = MPoly::default();
        m.add_term(exps, rat(1, 1));
        m
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        let entry = self.terms.entry(exps.clone()).or_insert_with(|| rat(0, 1));
        *entry += c;
        if *entry == rat(0, 1) {
            self.terms.remove(&exps);
        }
    }

    /// A univariate polynomial in variable `k`, from ascending coefficients.
    pub fn univariate(nvars: usize, k: usize, coeffs: &[Rational]) -> Self {
        let mut m = MPoly::default();
        for (i, c) in coeffs.iter().enumerate() {
            let mut exps = vec![0; nvars];
            exps[k] = i as u32;
            m.add_term(exps, c.clone());
        }
        m
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat(-1, 1)))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = MPoly::default();
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = MPoly::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

pub fn random_poly(rng: &mut StdRng, degree: usize, height: i64) -> P {
    let mut cs: Vec<Rational> = (0..degree).map(|_| rational(rng, height)).collect();
    cs.push(nonzero_rational(rng, height));
    P::new(cs)
}

pub fn random_pythagorean(rng: &mut StdRng) -> (Rational, Rational) {
    let c = SpherePoint::equator(&rational(rng, 7));
    (c.x().clone(), c.y().clone())
}

pub fn random_sphere_twist(rng: &mut StdRng) -> SphereTwist<Rational> {
    let axis = Axis::from_index(rng.gen_range(0..3));
    match rng.gen_range(0..4) {
        0 => sphere_lambda_twist(&nonzero_rational(rng, 6)).unwrap(),
        1 => {
            let (c, s) = random_pythagorean(rng);
            SphereTwist::constant(axis, c, s).unwrap()
        }
        _ => {
            let (c, s) = random_pythagorean(rng);
            let deg = rng.gen_range(0..=3);
            let a = random_poly(rng, deg, 5);
            SphereTwist::from_parameter_offset(axis, c, s, &a).unwrap()
        }
    }
}

pub fn random_generator(rng: &mut StdRng, surface: SurfaceKind) -> Generator<Rational> {
    match surface {
        SurfaceKind::Sphere => Generator::SphereTwist(random_sphere_twist(rng)),
        SurfaceKind::Torus => match rng.gen_range(0..3) {
            0 => loop {
                let m = |rng: &mut StdRng| [rational(rng, 4), rational(rng, 4), rational(rng, 4), rational(rng, 4)];
                let (x, y) = (m(rng), m(rng));
                if let Ok(g) = TorusMoebius::new(x, y) {
                    return Generator::TorusMoebius(g);
                }
            },
            1 => {
                let shear = if rng.gen_bool(0.5) { TorusFactor::X } else { TorusFactor::Y };
                let k = rng.gen_range(0..=2);
                let s = random_poly(rng, k, 4);
                let p = random_poly(rng, 2 * k, 4);
                Generator::TorusTwist(TorusTwist::one_plus_square(shear, p, &s).unwrap())
            }
            _ => {
                let shear = if rng.gen_bool(0.5) { TorusFactor::X } else { TorusFactor::Y };
                let (a, b) = (rational(rng, 4), nonzero_rational(rng, 4));
                let qq = P::new(vec![&a * &a + &b * &b, -(&a * q(2)), q(1)]);
                let p = random_poly(rng, 2, 4);
                Generator::TorusTwist(TorusTwist::new(shear, p, qq).unwrap())
            }
        },
    }
}

pub fn random_word(rng: &mut StdRng, surface: SurfaceKind) -> AutWord<Rational> {
    let len = rng.gen_range(0..=5);
    let gens = (0..len).map(|_| random_generator(rng, surface)).collect();
    AutWord::new(surface, gens).unwrap()
}

pub fn random_point(rng: &mut StdRng, surface: SurfaceKind) -> Point<Rational> {
    match surface {
        SurfaceKind::Torus => {
            let factor = |rng: &mut StdRng| {
                if rng.gen_range(0..6) == 0 {
                    ProjPoint::infinity()
                } else {
                    ProjPoint::finite(rational(rng, 6))
                }
            };
            let (x, y) = (factor(rng), factor(rng));
            Point::Torus(TorusPoint::new(x, y))
        }
        SurfaceKind::Sphere => {
            let (u, v) = (rational(rng, 4), rational(rng, 4));
            let n = &u * &u + &v * &v;
            let den = &n + q(1);
            Point::sphere(&u * q(2) / &den, &v * q(2) / &den, (n - q(1)) / den).unwrap()
        }
    }
}
