use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::{isolate_root, sturm_count, OrderedField, Poly, RootRange, Series, SturmCount};
use crate::surfaces::{Axis, Germ, SurfaceKind};

/// The torus factor moved by a twist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TorusFactor {
    /// `(x, y) ↦ (x + p(y)/q(y), y)`
    X,
    /// `(x, y) ↦ (x, y + p(x)/q(x))`
    Y,
}

impl TorusFactor {
    pub fn index(self) -> usize {
        match self {
            TorusFactor::X => 0,
            TorusFactor::Y => 1,
        }
    }

    pub fn name(self) -> &'static str {
        ["x", "y"][self.index()]
    }
}

/// The region a twist denominator must avoid, and the proof that it does.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate<F> {
    /// `true` for the whole real line, `false` for `[−1, 1]`.
    pub whole_line: bool,
    pub witness: Witness<F>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Witness<F> {
    /// A Sturm count of zero roots in the region.
    Sturm(SturmCount),
    /// The denominator equals `1 + s²` for this `s`.
    OnePlusSquare(Poly<F>),
    /// A sphere twist with `p + i·q = (cos + i·sin)(1 + i·a)²` and `r = 1 + a²`.
    RotationParameter { cos: F, sin: F, a: Poly<F> },
}

/// `y ↦ y + p(x)/q(x)` (or the same with `x` and `y` exchanged), with `deg p = deg q`
/// and `q` free of real roots. Equality ignores the certificate.
#[derive(Clone, Debug)]
pub struct TorusTwist<F> {
    shear: TorusFactor,
    p: Poly<F>,
    q: Poly<F>,
    certificate: Certificate<F>,
}

/// A pair of invertible `2×2` matrices `[a, b, c, d]` acting on the two factors by
/// `(u:v) ↦ (a·u + b·v : c·u + d·v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusMoebius<F> {
    mats: [[F; 4]; 2],
}

/// `(s, y_a, y_b) ↦ (s, (y_a·p − y_b·q)/r, (y_a·q + y_b·p)/r)` with `s` the fixed
/// coordinate, `(a, b)` the next two in cyclic order, `p² + q² = r²`, and `r`
/// without roots in `[−1, 1]`. Equality ignores the certificate.
#[derive(Clone, Debug)]
pub struct SphereTwist<F> {
    fixed: Axis,
    p: Poly<F>,
    q: Poly<F>,
    r: Poly<F>,
    certificate: Certificate<F>,
}

impl<F: PartialEq> PartialEq for TorusTwist<F> {
    fn eq(&self, other: &Self) -> bool {
        (self.shear, &self.p, &self.q) == (other.shear, &other.p, &other.q)
    }
}

impl<F: PartialEq> PartialEq for SphereTwist<F> {
    fn eq(&self, other: &Self) -> bool {
        (self.fixed, &self.p, &self.q, &self.r) == (other.fixed, &other.p, &other.q, &other.r)
    }
}

/// An uncertified generator.
#[derive(Clone, Debug, PartialEq)]
pub enum Candidate<F> {
    TorusTwist {
        shear: TorusFactor,
        p: Poly<F>,
        q: Poly<F>,
    },
    TorusMoebius {
        x: [F; 4],
        y: [F; 4],
    },
    SphereTwist {
        fixed: Axis,
        p: Poly<F>,
        q: Poly<F>,
        r: Poly<F>,
    },
}

/// A certified generator of the automorphism group.
#[derive(Clone, Debug, PartialEq)]
pub enum Generator<F> {
    TorusTwist(TorusTwist<F>),
    TorusMoebius(TorusMoebius<F>),
    SphereTwist(SphereTwist<F>),
}

fn no_roots<F: OrderedField>(poly: &Poly<F>, whole_line: bool) -> Result<Certificate<F>> {
    let range = if whole_line {
        RootRange::WholeLine
    } else {
        RootRange::unit_interval()
    };
    let count = sturm_count(poly, &range)?;
    if count.roots > 0 {
        let (lo, hi) = isolate_root(poly, &range)?.expect("a counted root can be isolated");
        return Err(Error::RootInForbiddenRegion {
            poly: poly.to_string(),
            lo: lo.to_string(),
            hi: hi.to_string(),
        });
    }
    Ok(Certificate {
        whole_line,
        witness: Witness::Sturm(count),
    })
}


/// Checks the hypotheses of a candidate and attaches the Sturm certificate.
pub fn certify_twist<F: OrderedField>(candidate: Candidate<F>) -> Result<Generator<F>> {
    match candidate {
        Candidate::TorusTwist { shear, p, q } => TorusTwist::new(shear, p, q).map(Generator::TorusTwist),
        Candidate::TorusMoebius { x, y } => TorusMoebius::new(x, y).map(Generator::TorusMoebius),
        Candidate::SphereTwist { fixed, p, q, r } => {
            SphereTwist::new(fixed, p, q, r).map(Generator::SphereTwist)
        }
    }
}

impl<F: OrderedField> TorusTwist<F> {
    pub fn new(shear: TorusFactor, p: Poly<F>, q: Poly<F>) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::DegreeMismatch(p.degree(), q.degree()));
        }
        let certificate = no_roots(&q, true)?;
        Self::checked(shear, p, q, certificate)
    }

    /// The twist with `q = 1 + s²`, positive without a Sturm count.
    pub fn one_plus_square(shear: TorusFactor, p: Poly<F>, s: &Poly<F>) -> Result<Self> {
        let q = &Poly::one() + &(s * s);
        let certificate = Certificate {
            whole_line: true,
            witness: Witness::OnePlusSquare(s.clone()),
        };
        Self::checked(shear, p, q, certificate)
    }

    /// Checks `q` against a stored witness instead of recounting roots when
    /// the witness is `1 + s²`.
    pub fn with_witness(shear: TorusFactor, p: Poly<F>, q: Poly<F>, witness: Witness<F>) -> Result<Self> {
        match witness {
            Witness::OnePlusSquare(s) => {
                let twist = Self::one_plus_square(shear, p, &s)?;
                if twist.q != q {
                    return Err(Error::PreconditionFailed("denominator is not 1 + s^2 for the witness s".into()));
                }
                Ok(twist)
            }
            _ => Self::new(shear, p, q),
        }
    }

    fn checked(shear: TorusFactor, p: Poly<F>, q: Poly<F>, certificate: Certificate<F>) -> Result<Self> {
        if p.degree() != q.degree() {
            return Err(Error::DegreeMismatch(p.degree(), q.degree()));
        }
        Ok(TorusTwist {
            shear,
            p,
            q,
            certificate,
        })
    }

    pub fn shear(&self) -> TorusFactor {
        self.shear
    }

    pub fn p(&self) -> &Poly<F> {
        &self.p
    }

    pub fn q(&self) -> &Poly<F> {
        &self.q
    }

    pub fn certificate(&self) -> &Certificate<F> {
        &self.certificate
    }

    pub fn inverse(&self) -> Self {
        TorusTwist {
            shear: self.shear,
            p: -&self.p,
            q: self.q.clone(),
            certificate: self.certificate.clone(),
        }
    }
}

fn det<F: OrderedField>(m: &[F; 4]) -> F {
    m[0].clone() * &m[3] - &(m[1].clone() * &m[2])
}

impl<F: OrderedField> TorusMoebius<F> {
    pub fn new(x: [F; 4], y: [F; 4]) -> Result<Self> {
        if det(&x).is_zero() || det(&y).is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(TorusMoebius { mats: [x, y] })
    }

    pub fn matrix(&self, k: usize) -> &[F; 4] {
        &self.mats[k]
    }

    pub fn inverse(&self) -> Self {
        let adj = |m: &[F; 4]| [m[3].clone(), -m[1].clone(), -m[2].clone(), m[0].clone()];
        TorusMoebius {
            mats: [adj(&self.mats[0]), adj(&self.mats[1])],
        }
    }
}

impl<F: OrderedField> SphereTwist<F> {
    pub fn new(fixed: Axis, p: Poly<F>, q: Poly<F>, r: Poly<F>) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::IdentityFails);
        }
        Self::check_identity(&p, &q, &r)?;
        let certificate = no_roots(&r, false)?;
        Ok(SphereTwist {
            fixed,
            p,
            q,
            r,
            certificate,
        })
    }

    fn check_identity(p: &Poly<F>, q: &Poly<F>, r: &Poly<F>) -> Result<()> {
        if &(p * p) + &(q * q) != r * r {
            return Err(Error::IdentityFails);
        }
        Ok(())
    }

    /// The twist `p = 1 − a², q = 2a, r = 1 + a²`: rotation by twice `arctan a(s)`.
    pub fn from_parameter(fixed: Axis, a: &Poly<F>) -> Result<Self> {
        SphereTwist::from_parameter_offset(fixed, F::one(), F::zero(), a)
    }

    /// The twist `p + i·q = (c + i·s)(1 + i·a)²`, `r = 1 + a²`, for `c² + s² = 1`:
    /// the rotation `(c, s)` followed by twice `arctan a`. Then `p² + q² = r²`
    /// holds identically, so only `c² + s² = 1` is checked.
    pub fn from_parameter_offset(fixed: Axis, c: F, s: F, a: &Poly<F>) -> Result<Self> {
        if !(c.square() + &s.square()).is_one() {
            return Err(Error::IdentityFails);
        }
        let a2 = a * a;
        let one_minus = &Poly::one() - &a2;
        let two_a = a.scale(&F::from_int(2));
        let p = &one_minus.scale(&c) - &two_a.scale(&s);
        let q = &one_minus.scale(&s) + &two_a.scale(&c);
        let r = &Poly::one() + &a2;
        let certificate = Certificate {
            whole_line: false,
            witness: Witness::RotationParameter { cos: c, sin: s, a: a.clone() },
        };
        Ok(SphereTwist {
            fixed,
            p,
            q,
            r,
            certificate,
        })
    }

    /// Checks `p, q, r` against a stored witness: a rotation parameter is
    /// re-expanded and compared, anything else is recertified from scratch.
    pub fn with_witness(fixed: Axis, p: Poly<F>, q: Poly<F>, r: Poly<F>, witness: Witness<F>) -> Result<Self> {
        match witness {
            Witness::RotationParameter { cos, sin, a } => {
                let twist = Self::from_parameter_offset(fixed, cos, sin, &a)?;
                if (&twist.p, &twist.q, &twist.r) != (&p, &q, &r) {
                    return Err(Error::PreconditionFailed("twist does not match its rotation parameter".into()));
                }
                Ok(twist)
            }
            _ => Self::new(fixed, p, q, r),
        }
    }

    /// Rotation by the same angle at every `s`: `(c, s)` with `c² + s² = 1`.
    pub fn constant(fixed: Axis, cos: F, sin: F) -> Result<Self> {
        SphereTwist::new(fixed, Poly::constant(cos), Poly::constant(sin), Poly::one())
    }

    pub fn fixed(&self) -> Axis {
        self.fixed
    }

    pub fn p(&self) -> &Poly<F> {
        &self.p
    }

    pub fn q(&self) -> &Poly<F> {
        &self.q
    }

    pub fn r(&self) -> &Poly<F> {
        &self.r
    }

    pub fn certificate(&self) -> &Certificate<F> {
        &self.certificate
    }

    pub fn inverse(&self) -> Self {
        let mut certificate = self.certificate.clone();
        if let Witness::RotationParameter { sin, a, .. } = &mut certificate.witness {
            *sin = -sin.clone();
            *a = -&*a;
        }
        SphereTwist {
            fixed: self.fixed,
            p: self.p.clone(),
            q: -&self.q,
            r: self.r.clone(),
            certificate,
        }
    }

    /// Coefficients of `y_a²`, `y_a·y_b` and `y_b²` in
    /// `(y_a·p − y_b·q)² + (y_a·q + y_b·p)² − (y_a² + y_b²)·r²`.
    pub fn preservation_defect(&self) -> [Poly<F>; 3] {
        let (p, q, r) = (&self.p, &self.q, &self.r);
        let pp = p * p;
        let qq = q * q;
        let pq = p * q;
        let rr = r * r;
        let two = Poly::constant(F::from_int(2));
        [
            &(&pp + &qq) - &rr,
            &(&two * &pq) - &(&two * &pq),
            &(&qq + &pp) - &rr,
        ]
    }
}

/// `Σ c_k U^k V^(d−k)` on series.
fn homogeneous<F: OrderedField>(p: &Poly<F>, d: usize, u: &Series<F>, v: &Series<F>) -> Series<F> {
    let e = u.order();
    let mut v_pows = vec![Series::one(F::zero(), e)];
    for i in 0..d {
        let next = &v_pows[i] * v;
        v_pows.push(next);
    }
    let mut acc = Series::zero(F::zero(), e);
    for k in (0..=d).rev() {
        acc = &(&acc * u) + &v_pows[d - k].scale(&p.coeff(k));
    }
    acc
}

impl<F: OrderedField> Generator<F> {
    pub fn surface(&self) -> SurfaceKind {
        match self {
            Generator::SphereTwist(_) => SurfaceKind::Sphere,
            _ => SurfaceKind::Torus,
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            Generator::TorusTwist(t) => Generator::TorusTwist(t.inverse()),
            Generator::TorusMoebius(m) => Generator::TorusMoebius(m.inverse()),
            Generator::SphereTwist(t) => Generator::SphereTwist(t.inverse()),
        }
    }

    /// Image of a germ. Torus germs come back rescaled so that each factor has a
    /// coordinate equal to 1; sphere germs are mapped by the ambient formula,
    /// which also makes sense off the sphere.
    pub fn apply_germ(&self, germ: &Germ<F>) -> Result<Germ<F>> {
        assert_eq!(germ.surface, self.surface(), "generator applied on the wrong surface");
        let c = &germ.coords;
        match self {
            Generator::TorusTwist(t) => {
                let k = t.shear.index();
                let o = 1 - k;
                let d = t.q.degree().unwrap_or(0);
                let (u, v) = (&c[2 * o], &c[2 * o + 1]);
                let pb = homogeneous(&t.p, d, u, v);
                let qb = homogeneous(&t.q, d, u, v);
                let mut coords = c.clone();
                coords[2 * k] = &(&qb * &c[2 * k]) + &(&pb * &c[2 * k + 1]);
                coords[2 * k + 1] = &qb * &c[2 * k + 1];
                Germ {
                    surface: germ.surface,
                    coords,
                }
                .normalized()
            }
            Generator::TorusMoebius(m) => {
                let mut coords = Vec::with_capacity(4);
                for k in 0..2 {
                    let [a, b, cc, d] = &m.mats[k];
                    let (u, v) = (&c[2 * k], &c[2 * k + 1]);
                    coords.push(&u.scale(a) + &v.scale(b));
                    coords.push(&u.scale(cc) + &v.scale(d));
                }
                Germ {
                    surface: germ.surface,
                    coords,
                }
                .normalized()
            }
            Generator::SphereTwist(t) => {
                let k = t.fixed.index();
                let (a, b) = t.fixed.others();
                let s = &c[k];
                let (p, q, r) = (s.eval_poly(&t.p), s.eval_poly(&t.q), s.eval_poly(&t.r));
                let rinv = r.invert()?;
                let (ya, yb) = (&c[a.index()], &c[b.index()]);
                let mut coords = c.clone();
                coords[a.index()] = &(&(ya * &p) - &(yb * &q)) * &rinv;
                coords[b.index()] = &(&(ya * &q) + &(yb * &p)) * &rinv;
                Ok(Germ {
                    surface: germ.surface,
                    coords,
                })
            }
        }
    }
}

impl<F: OrderedField + fmt::Display> Generator<F> {
    /// The map as a coordinate formula.
    pub fn formula(&self) -> String {
        match self {
            Generator::TorusTwist(t) => {
                let (moved, other) = match t.shear {
                    TorusFactor::X => ("x", "y"),
                    TorusFactor::Y => ("y", "x"),
                };
                let shift = format!("{moved} + ({})/({})", t.p.display_in(other), t.q.display_in(other));
                match t.shear {
                    TorusFactor::X => format!("(x, y) -> ({shift}, y)"),
                    TorusFactor::Y => format!("(x, y) -> (x, {shift})"),
                }
            }
            Generator::TorusMoebius(m) => {
                let f = |v: &str, m: &[F; 4]| format!("({}*{v} + {})/({}*{v} + {})", m[0], m[1], m[2], m[3]);
                format!("(x, y) -> ({}, {})", f("x", &m.mats[0]), f("y", &m.mats[1]))
            }
            Generator::SphereTwist(t) => {
                let s = t.fixed.name();
                let (a, b) = t.fixed.others();
                let (a, b) = (a.name(), b.name());
                let (p, q, r) = (t.p.display_in(s), t.q.display_in(s), t.r.display_in(s));
                let na = format!("({a}*({p}) - {b}*({q}))/({r})");
                let nb = format!("({a}*({q}) + {b}*({p}))/({r})");
                let mut out = [String::new(), String::new(), String::new()];
                out[t.fixed.index()] = s.to_string();
                out[t.fixed.others().0.index()] = na;
                out[t.fixed.others().1.index()] = nb;
                format!("(x, y, z) -> ({}, {}, {})", out[0], out[1], out[2])
            }
        }
    }
}
