//! Real quadratic extension towers over the rationals.
//!
//! A tower `Q = K_0 ⊂ K_1 ⊂ … ⊂ K_n` adjoins at each level the positive square
//! root `t_k` of a radicand `r_k ∈ K_{k-1}` that is not already a square. An
//! element of `K_n` is stored as its `2^n` rational coordinates in the basis of
//! products of generators: bit `k` of a coordinate index says whether `t_k`
//! occurs. Splitting the coordinate vector in halves gives the `a + b·t_n`
//! decomposition used by every recursive routine here.
//!
//! Signs are decided exactly: for `a + b·t` with `a` and `b` of opposite sign,
//! the result has the sign of whichever of `a²` and `b²·r` is larger.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::error::AlgError;
use super::field::{Field, OrderedField, Rational, SqrtField};
use super::ratops;

#[derive(Clone, Debug, PartialEq)]
struct Level {
    /// Coordinates of the radicand in the field one level down.
    radicand: Vec<Rational>,
    /// Radicand is a plain rational (only the first coordinate is nonzero).
    rational: bool,
    /// For a rational radicand `n/d`: `(d, n·d)`, so that `u = d·t` has `u² = n·d`.
    integral: Option<(BigInt, BigInt)>,
}

impl Level {
    fn new(radicand: Vec<Rational>) -> Self {
        let rational = radicand[1..].iter().all(Zero::is_zero);
        let integral = rational.then(|| {
            let r = &radicand[0];
            (r.denom().clone(), r.numer() * r.denom())
        });
        Level {
            radicand,
            rational,
            integral,
        }
    }
}

/// An ordered chain of adjoined square roots.
#[derive(Clone, Default)]
pub struct Tower {
    levels: Arc<Vec<Level>>,
}

impl Tower {
    /// The rational field.
    pub fn rationals() -> Self {
        Self::default()
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    fn same(&self, other: &Tower) -> bool {
        Arc::ptr_eq(&self.levels, &other.levels) || *self.levels == *other.levels
    }

    /// Whether `self` is an initial segment of `other`.
    pub fn is_prefix_of(&self, other: &Tower) -> bool {
        if Arc::ptr_eq(&self.levels, &other.levels) {
            return true;
        }
        self.depth() <= other.depth()
            && self
                .levels
                .iter()
                .zip(other.levels.iter())
                .all(|(a, b)| a == b)
    }

    fn common_prefix(&self, other: &Tower) -> usize {
        self.levels
            .iter()
            .zip(other.levels.iter())
            .take_while(|(a, b)| a == b)
            .count()
    }

    /// The radicand of level `k` (0-based) as a scalar of the tower below it.
    pub fn radicand(&self, k: usize) -> Scalar {
        Scalar {
            tower: self.truncated(k),
            coords: self.levels[k].radicand.clone(),
        }
    }

    fn truncated(&self, depth: usize) -> Tower {
        if depth == self.depth() {
            return self.clone();
        }
        Tower {
            levels: Arc::new(
                self.levels[..depth].to_vec(),
            ),
        }
    }

    /// The generator `t_k` as an element of this tower.
    pub fn generator(&self, k: usize) -> Scalar {
        let mut coords = vec![Rational::zero(); 1 << self.depth()];
        coords[1 << k] = Rational::one();
        Scalar {
            tower: self.clone(),
            coords,
        }
    }

    /// Appends a level; `radicand` must live in this tower and be a positive non-square.
    fn extended(&self, radicand: Vec<Rational>) -> Tower {
        debug_assert_eq!(radicand.len(), 1 << self.depth());
        let mut levels: Vec<Level> = self.levels.to_vec();
        levels.push(Level::new(radicand));
        Tower {
            levels: Arc::new(levels),
        }
    }

    /// Smallest tower containing both `self` and `other`, with `self` as a prefix.
    ///
    /// Levels of `other` beyond the shared prefix are re-adjoined one by one;
    /// those that turn out to be squares already are mapped onto existing
    /// elements instead of growing the result.
    pub fn merge(&self, other: &Tower) -> Tower {
        self.merge_with_images(other).0
    }

    fn merge_with_images(&self, other: &Tower) -> (Tower, Vec<Scalar>) {
        let shared = self.common_prefix(other);
        let mut merged = self.clone();
        let mut images: Vec<Scalar> = (0..shared).map(|k| merged.generator(k)).collect();
        for k in shared..other.depth() {
            let r = embed(&other.levels[k].radicand, &images, &merged);
            match r.sqrt_exact() {
                Some(s) => images.push(s),
                None => {
                    merged = merged.extended(r.coords);
                    for img in images.iter_mut() {
                        *img = img.lift(&merged);
                    }
                    images.push(merged.generator(merged.depth() - 1));
                }
            }
        }
        (merged, images)
    }

    /// Re-expresses `x` (an element of a tower sharing nothing in particular
    /// with `self`) inside the merge of `self` and `x`'s tower.
    fn import(&self, x: &Scalar) -> (Tower, Scalar) {
        let (merged, images) = self.merge_with_images(&x.tower);
        let y = embed(&x.coords, &images, &merged);
        (merged, y)
    }
}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = (0..self.depth())
            .map(|k| format!("sqrt({})", self.radicand(k)))
            .collect();
        write!(f, "Tower[{}]", gens.join(", "))
    }
}

/// Maps coordinates over generators with the given images into `target`.
fn embed(coords: &[Rational], images: &[Scalar], target: &Tower) -> Scalar {
    if coords.len() == 1 {
        return Scalar::from_rational_in(coords[0].clone(), target);
    }
    let h = coords.len() / 2;
    let k = h.trailing_zeros() as usize;
    let lo = embed(&coords[..h], &images[..k], target);
    if is_zero_slice(&coords[h..]) {
        return lo;
    }
    let hi = embed(&coords[h..], &images[..k], target);
    lo + hi * &images[k]
}

/// Element of a real quadratic tower over the rationals.
#[derive(Clone)]
pub struct Scalar {
    tower: Tower,
    coords: Vec<Rational>,
}

impl Scalar {
    pub fn from_rational(q: Rational) -> Self {
        Scalar {
            tower: Tower::rationals(),
            coords: vec![q],
        }
    }

    fn from_rational_in(q: Rational, tower: &Tower) -> Self {
        let mut coords = vec![Rational::zero(); 1 << tower.depth()];
        coords[0] = q;
        Scalar {
            tower: tower.clone(),
            coords,
        }
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    /// Coordinates over the generator-product basis.
    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// `Some(q)` when the value is rational.
    pub fn to_rational(&self) -> Option<Rational> {
        if is_zero_slice(&self.coords[1..]) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        is_zero_slice(&self.coords[1..])
    }

    /// Re-expresses `self` in a tower that extends its own.
    ///
    /// Panics when `tower` does not have `self.tower()` as a prefix.
    pub fn lift(&self, tower: &Tower) -> Scalar {
        if Arc::ptr_eq(&self.tower.levels, &tower.levels) {
            return self.clone();
        }
        assert!(
            self.tower.is_prefix_of(tower),
            "lift target does not extend the scalar's tower"
        );
        let mut coords = self.coords.clone();
        coords.resize(1 << tower.depth(), Rational::zero());
        Scalar {
            tower: tower.clone(),
            coords,
        }
    }

    /// Re-expresses `self` in `tower` or in the merge of both towers.
    pub fn lift_or_merge(&self, tower: &Tower) -> Scalar {
        if self.tower.is_prefix_of(tower) {
            self.lift(tower)
        } else {
            tower.import(self).1
        }
    }

    /// The smallest tower holding both operands, with each operand re-expressed in it.
    fn unify(&self, other: &Scalar) -> (Tower, Option<Vec<Rational>>, Option<Vec<Rational>>) {
        if self.tower.same(&other.tower) {
            return (self.tower.clone(), None, None);
        }
        if self.tower.is_prefix_of(&other.tower) {
            return (
                other.tower.clone(),
                Some(self.lift(&other.tower).coords),
                None,
            );
        }
        if other.tower.is_prefix_of(&self.tower) {
            return (
                self.tower.clone(),
                None,
                Some(other.lift(&self.tower).coords),
            );
        }
        let (merged, y) = self.tower.import(other);
        let x = self.lift(&merged);
        (merged, Some(x.coords), Some(y.coords))
    }

    fn zip_with(
        &self,
        other: &Scalar,
        op: impl Fn(&[Level], &[Rational], &[Rational]) -> Vec<Rational>,
    ) -> Scalar {
        let (tower, a, b) = self.unify(other);
        let a = a.as_deref().unwrap_or(&self.coords);
        let b = b.as_deref().unwrap_or(&other.coords);
        let coords = op(&tower.levels, a, b);
        Scalar { tower, coords }
    }

    /// Square root, adjoining a new tower level when `self` is not already a square.
    pub fn sqrt_adjoin(&self) -> Result<Scalar, AlgError> {
        self.sqrt_adjoin_in(&self.tower)
    }

    /// Like [`Scalar::sqrt_adjoin`], but grows `context` rather than `self`'s own tower,
    /// so that successive roots accumulate in a single chain.
    pub fn sqrt_adjoin_in(&self, context: &Tower) -> Result<Scalar, AlgError> {
        let s = self.lift_or_merge(context);
        match s.sign() {
            Ordering::Less => return Err(AlgError::NegativeRadicand(s.to_string())),
            Ordering::Equal => return Ok(s),
            Ordering::Greater => {}
        }
        if let Some(root) = s.sqrt_exact() {
            return Ok(root);
        }
        let tower = s.tower.extended(s.coords);
        Ok(tower.generator(tower.depth() - 1))
    }
}

fn is_zero_slice(xs: &[Rational]) -> bool {
    xs.iter().all(Zero::is_zero)
}

fn add_slices(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| ratops::add(x, y)).collect()
}

fn sub_slices(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| ratops::sub(x, y)).collect()
}

fn scale_slice(a: &[Rational], s: &Rational) -> Vec<Rational> {
    a.iter().map(|x| ratops::mul(x, s)).collect()
}

fn split(levels: &[Level], n: usize) -> (&[Level], &Level) {
    let k = n.trailing_zeros() as usize - 1;
    (&levels[..k], &levels[k])
}

fn mul_slices(levels: &[Level], a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len();
    if n == 1 {
        return vec![ratops::mul(&a[0], &b[0])];
    }
    let h = n / 2;
    let (lower, level) = split(levels, n);
    let (a0, a1) = a.split_at(h);
    let (b0, b1) = b.split_at(h);
    let a1z = is_zero_slice(a1);
    let b1z = is_zero_slice(b1);
    if a1z && b1z {
        let mut out = mul_slices(lower, a0, b0);
        out.resize(n, Rational::zero());
        return out;
    }
    if a1z {
        let mut out = mul_slices(lower, a0, b0);
        out.extend(mul_slices(lower, a0, b1));
        return out;
    }
    if b1z {
        let mut out = mul_slices(lower, a0, b0);
        out.extend(mul_slices(lower, a1, b0));
        return out;
    }
    let p0 = mul_slices(lower, a0, b0);
    let p1 = mul_slices(lower, a1, b1);
    let cross = mul_slices(lower, &add_slices(a0, a1), &add_slices(b0, b1));
    let cross = sub_slices(&sub_slices(&cross, &p0), &p1);
    let p1r = if level.rational {
        scale_slice(&p1, &level.radicand[0])
    } else {
        mul_slices(lower, &p1, &level.radicand)
    };
    let mut out = add_slices(&p0, &p1r);
    out.extend(cross);
    out
}

/// Product over a tower whose radicands are all rational, done on integers.
///
/// Coordinates are rewritten over the scaled generators `u_k = d_k·t_k`
/// (with `u_k² = n_k·d_k`) and brought to a common denominator, so the
/// recursion needs no gcd; the result is reduced once per coordinate.
fn mul_integral(levels: &[Level], a: &[Rational], b: &[Rational]) -> Option<Vec<Rational>> {
    let scales: Vec<&(BigInt, BigInt)> = levels
        .iter()
        .map(|l| l.integral.as_ref())
        .collect::<Option<_>>()?;
    let weight = |i: usize| -> BigInt {
        scales
            .iter()
            .enumerate()
            .filter(|(k, _)| i >> k & 1 == 1)
            .fold(BigInt::one(), |acc, (_, (d, _))| acc * d)
    };
    let weights: Vec<BigInt> = (0..a.len()).map(weight).collect();
    let to_int = |x: &[Rational]| -> (Vec<BigInt>, BigInt) {
        let scaled: Vec<Rational> = x
            .iter()
            .zip(&weights)
            .map(|(c, w)| {
                if w.is_one() {
                    c.clone()
                } else {
                    ratops::reduced(c.numer().clone(), c.denom() * w)
                }
            })
            .collect();
        let den = scaled.iter().fold(BigInt::one(), |acc, c| {
            let g = ratops::gcd(&acc, c.denom());
            acc / g * c.denom()
        });
        let ints = scaled
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        (ints, den)
    };
    let (ia, da) = to_int(a);
    let (ib, db) = to_int(b);
    let radicands: Vec<&BigInt> = scales.iter().map(|(_, m)| m).collect();
    let prod = mul_ints(&radicands, &ia, &ib);
    let den = da * db;
    Some(
        prod.into_iter()
            .zip(&weights)
            .map(|(c, w)| ratops::reduced(c * w, den.clone()))
            .collect(),
    )
}

fn mul_ints(radicands: &[&BigInt], a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len();
    if n == 1 {
        return vec![&a[0] * &b[0]];
    }
    let h = n / 2;
    let k = h.trailing_zeros() as usize;
    let (lower, m) = (&radicands[..k], radicands[k]);
    let (a0, a1) = a.split_at(h);
    let (b0, b1) = b.split_at(h);
    let zero = |x: &[BigInt]| x.iter().all(Zero::is_zero);
    let (a1z, b1z) = (zero(a1), zero(b1));
    if a1z || b1z {
        let mut out = mul_ints(lower, a0, b0);
        match (a1z, b1z) {
            (true, true) => out.resize(n, BigInt::zero()),
            (true, false) => out.extend(mul_ints(lower, a0, b1)),
            _ => out.extend(mul_ints(lower, a1, b0)),
        }
        return out;
    }
    let add = |x: &[BigInt], y: &[BigInt]| -> Vec<BigInt> { x.iter().zip(y).map(|(p, q)| p + q).collect() };
    let p0 = mul_ints(lower, a0, b0);
    let p1 = mul_ints(lower, a1, b1);
    let cross = mul_ints(lower, &add(a0, a1), &add(b0, b1));
    let cross: Vec<BigInt> = cross
        .iter()
        .zip(&p0)
        .zip(&p1)
        .map(|((c, x), y)| c - x - y)
        .collect();
    let mut out: Vec<BigInt> = p0.iter().zip(&p1).map(|(x, y)| x + y * m).collect();
    out.extend(cross);
    out
}

fn mul_radicand(lower: &[Level], level: &Level, x: &[Rational]) -> Vec<Rational> {
    if level.rational {
        scale_slice(x, &level.radicand[0])
    } else {
        mul_slices(lower, x, &level.radicand)
    }
}

/// `a0² − a1²·r`, the norm down to the previous level.
fn norm_down(lower: &[Level], level: &Level, a0: &[Rational], a1: &[Rational]) -> Vec<Rational> {
    let a0sq = mul_slices(lower, a0, a0);
    let a1sq = mul_slices(lower, a1, a1);
    sub_slices(&a0sq, &mul_radicand(lower, level, &a1sq))
}

fn sign_slice(levels: &[Level], a: &[Rational]) -> Ordering {
    let n = a.len();
    if n == 1 {
        return a[0].sign();
    }
    let h = n / 2;
    let (lower, level) = split(levels, n);
    let (a0, a1) = a.split_at(h);
    let s1 = sign_slice(lower, a1);
    if s1 == Ordering::Equal {
        return sign_slice(lower, a0);
    }
    let s0 = sign_slice(lower, a0);
    if s0 == Ordering::Equal || s0 == s1 {
        return s1;
    }
    match sign_slice(lower, &norm_down(lower, level, a0, a1)) {
        Ordering::Greater => s0,
        Ordering::Less => s1,
        // Only possible if the level were not a genuine extension.
        Ordering::Equal => unreachable!("degenerate tower level"),
    }
}

fn inv_slice(levels: &[Level], a: &[Rational]) -> Vec<Rational> {
    let n = a.len();
    if n == 1 {
        return vec![a[0].recip()];
    }
    let h = n / 2;
    let (lower, level) = split(levels, n);
    let (a0, a1) = a.split_at(h);
    if is_zero_slice(a1) {
        let mut out = inv_slice(lower, a0);
        out.resize(n, Rational::zero());
        return out;
    }
    let ninv = inv_slice(lower, &norm_down(lower, level, a0, a1));
    let mut out = mul_slices(lower, a0, &ninv);
    out.extend(mul_slices(lower, a1, &ninv).into_iter().map(|x| -x));
    out
}

fn sqrt_slice(levels: &[Level], a: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    if n == 1 {
        return a[0].sqrt_exact().map(|r| vec![r]);
    }
    if sign_slice(levels, a) == Ordering::Less {
        return None;
    }
    let h = n / 2;
    let (lower, level) = split(levels, n);
    let (a0, a1) = a.split_at(h);
    if is_zero_slice(a1) {
        if let Some(c) = sqrt_slice(lower, a0) {
            let mut out = c;
            out.resize(n, Rational::zero());
            return Some(out);
        }
        // a0 = d²·r means sqrt(a0) = d·t.
        let rinv = inv_slice(lower, &level.radicand);
        let d = sqrt_slice(lower, &mul_slices(lower, a0, &rinv))?;
        let mut out = vec![Rational::zero(); h];
        out.extend(d);
        return Some(out);
    }
    let norm = sqrt_slice(lower, &norm_down(lower, level, a0, a1))?;
    let half = Rational::new(1.into(), 2.into());
    for cand in [add_slices(a0, &norm), sub_slices(a0, &norm)] {
        let cand = scale_slice(&cand, &half);
        let Some(c) = sqrt_slice(lower, &cand) else {
            continue;
        };
        if is_zero_slice(&c) {
            continue;
        }
        let two_c_inv = inv_slice(lower, &scale_slice(&c, &Rational::from_int(2)));
        let d = mul_slices(lower, a1, &two_c_inv);
        let mut root = c;
        root.extend(d);
        if mul_slices(levels, &root, &root) != a {
            continue;
        }
        if sign_slice(levels, &root) == Ordering::Less {
            root = root.into_iter().map(|x| -x).collect();
        }
        return Some(root);
    }
    None
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        let (_, a, b) = self.unify(other);
        let a = a.as_deref().unwrap_or(&self.coords);
        let b = b.as_deref().unwrap_or(&other.coords);
        a == b
    }
}

impl Eq for Scalar {}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::from_rational(Rational::zero())
    }

    fn is_zero(&self) -> bool {
        is_zero_slice(&self.coords)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::from_rational(Rational::one())
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            tower: self.tower,
            coords: self.coords.into_iter().map(|x| -x).collect(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

impl Scalar {
    fn add_ref(&self, rhs: &Scalar) -> Scalar {
        self.zip_with(rhs, |_, a, b| add_slices(a, b))
    }

    fn sub_ref(&self, rhs: &Scalar) -> Scalar {
        self.zip_with(rhs, |_, a, b| sub_slices(a, b))
    }

    fn mul_ref(&self, rhs: &Scalar) -> Scalar {
        self.zip_with(rhs, |levels, a, b| {
            if a.len() > 1 {
                if let Some(c) = mul_integral(levels, a, b) {
                    return c;
                }
            }
            mul_slices(levels, a, b)
        })
    }

    fn div_ref(&self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero scalar");
        self.zip_with(rhs, |levels, a, b| {
            mul_slices(levels, a, &inv_slice(levels, b))
        })
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$imp(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                self.$imp(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$imp(&rhs)
            }
        }
        impl<'a, 'b> $tr<&'b Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'b Scalar) -> Scalar {
                self.$imp(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Div, div, div_ref);

impl Field for Scalar {
    fn from_int(n: i64) -> Self {
        Scalar::from_rational(Rational::from_int(n))
    }

    fn from_rational(q: &Rational) -> Self {
        Scalar::from_rational(q.clone())
    }

    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero scalar");
        Scalar {
            tower: self.tower.clone(),
            coords: inv_slice(&self.tower.levels, &self.coords),
        }
    }
}

impl OrderedField for Scalar {
    fn sign(&self) -> Ordering {
        sign_slice(&self.tower.levels, &self.coords)
    }
}

impl SqrtField for Scalar {
    fn sqrt_exact(&self) -> Option<Self> {
        sqrt_slice(&self.tower.levels, &self.coords).map(|coords| Scalar {
            tower: self.tower.clone(),
            coords,
        })
    }

    fn sqrt_extend(&self) -> Option<Self> {
        self.sqrt_adjoin().ok()
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::from_rational(q)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Writes `num/den` for rationals, or a sum of rational multiples of products
/// of `sqrt(...)` generators, e.g. `1/2 - 3*sqrt(2)*sqrt(5)`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = (0..self.tower.depth())
            .map(|k| format!("sqrt({})", self.tower.radicand(k)))
            .collect();
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.sign() == Ordering::Less;
            let mag = OrderedField::abs(c);
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let factors: Vec<&str> = (0..gens.len())
                .filter(|k| i & (1 << k) != 0)
                .map(|k| gens[k].as_str())
                .collect();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Parses the radical expressions written by `Display`.
///
/// All `sqrt(...)` generators met by one parser are adjoined to a single
/// growing tower, so scalars read from the same document share it.
#[derive(Default)]
pub struct ScalarParser {
    tower: Tower,
}

impl ScalarParser {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn parse(&mut self, text: &str) -> Result<Scalar, AlgError> {
        let mut cur = Cursor {
            src: text.as_bytes(),
            pos: 0,
        };
        let value = self.expr(&mut cur)?;
        cur.skip_ws();
        if cur.pos != cur.src.len() {
            return Err(cur.error("trailing input"));
        }
        Ok(value.lift(&self.tower))
    }

    fn expr(&mut self, cur: &mut Cursor) -> Result<Scalar, AlgError> {
        let mut acc = self.term(cur)?;
        loop {
            cur.skip_ws();
            match cur.peek() {
                Some(b'+') => {
                    cur.pos += 1;
                    acc = acc + self.term(cur)?;
                }
                Some(b'-') => {
                    cur.pos += 1;
                    acc = acc - self.term(cur)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self, cur: &mut Cursor) -> Result<Scalar, AlgError> {
        let mut acc = self.factor(cur)?;
        loop {
            cur.skip_ws();
            match cur.peek() {
                Some(b'*') => {
                    cur.pos += 1;
                    acc = acc * self.factor(cur)?;
                }
                Some(b'/') => {
                    cur.pos += 1;
                    let d = self.factor(cur)?;
                    if d.is_zero() {
                        return Err(cur.error("division by zero"));
                    }
                    acc = acc / d;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self, cur: &mut Cursor) -> Result<Scalar, AlgError> {
        cur.skip_ws();
        match cur.peek() {
            Some(b'-') => {
                cur.pos += 1;
                Ok(-self.factor(cur)?)
            }
            Some(b'(') => {
                cur.pos += 1;
                let v = self.expr(cur)?;
                cur.expect(b')')?;
                Ok(v)
            }
            Some(b's') => {
                cur.keyword("sqrt")?;
                cur.expect(b'(')?;
                let v = self.expr(cur)?;
                cur.expect(b')')?;
                let root = v.sqrt_adjoin_in(&self.tower)?;
                if !root.tower.same(&self.tower) {
                    self.tower = root.tower.clone();
                }
                Ok(root)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = cur.pos;
                while cur.peek().is_some_and(|c| c.is_ascii_digit()) {
                    cur.pos += 1;
                }
                let digits = std::str::from_utf8(&cur.src[start..cur.pos]).unwrap();
                let n: num_bigint::BigInt = digits.parse().map_err(|_| cur.error("bad integer"))?;
                Ok(Scalar::from_rational(Rational::from_integer(n)).lift(&self.tower))
            }
            _ => Err(cur.error("expected a number, sqrt(...) or '('")),
        }
    }
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), AlgError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), AlgError> {
        if self.src[self.pos..].starts_with(kw.as_bytes()) {
            self.pos += kw.len();
            Ok(())
        } else {
            Err(self.error(&format!("expected '{kw}'")))
        }
    }

    fn error(&self, msg: &str) -> AlgError {
        AlgError::Parse {
            input: String::from_utf8_lossy(self.src).into_owned(),
            position: self.pos,
            message: msg.to_string(),
        }
    }
}

impl std::str::FromStr for Scalar {
    type Err = AlgError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ScalarParser::new().parse(s)
    }
}
