//! Truncated power series: elements of `F[x]/(x − c)^e`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::error::AlgError;
use super::field::Field;
use super::poly::Poly;

/// Residue modulo `(x − center)^order`, stored as its Taylor coefficients in `t = x − center`.
#[derive(Clone, PartialEq, Eq)]
pub struct Series<F> {
    center: F,
    coeffs: Vec<F>,
}

impl<F: Field> Series<F> {
    /// Series with the given coefficients; the order is `coeffs.len()`, which must be positive.
    pub fn new(center: F, coeffs: Vec<F>) -> Self {
        assert!(!coeffs.is_empty(), "series order must be at least 1");
        Series { center, coeffs }
    }

    /// Pads or truncates `coeffs` to exactly `order` entries.
    pub fn with_order(center: F, mut coeffs: Vec<F>, order: usize) -> Self {
        coeffs.resize(order, F::zero());
        Self::new(center, coeffs)
    }

    pub fn zero(center: F, order: usize) -> Self {
        Self::with_order(center, Vec::new(), order)
    }

    pub fn constant(center: F, order: usize, c: F) -> Self {
        Self::with_order(center, vec![c], order)
    }

    pub fn one(center: F, order: usize) -> Self {
        Self::constant(center, order, F::one())
    }

    /// The class of `x` itself: `center + t`.
    pub fn variable(center: F, order: usize) -> Self {
        let c = center.clone();
        Self::with_order(center, vec![c, F::one()], order)
    }

    /// Reduction of a polynomial in `x`.
    pub fn from_poly(p: &Poly<F>, center: F, order: usize) -> Self {
        let coeffs = p.taylor_at(&center);
        Self::with_order(center, coeffs, order)
    }

    pub fn center(&self) -> &F {
        &self.center
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &F {
        &self.coeffs[k]
    }

    /// Value at the center.
    pub fn constant_term(&self) -> &F {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_unit(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    /// Smallest index of a nonzero coefficient; the order itself for the zero series.
    pub fn valuation(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.order())
    }

    pub fn same_ring(&self, other: &Self) -> bool {
        self.order() == other.order() && self.center == other.center
    }

    fn check_ring(&self, other: &Self) {
        assert!(
            self.same_ring(other),
            "series arithmetic across different centers or orders"
        );
    }

    /// Image in the quotient by a lower power of `(x − center)`.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order >= 1 && order <= self.order());
        Self::new(self.center.clone(), self.coeffs[..order].to_vec())
    }

    /// The representative of degree `< self.order()` viewed modulo a higher power.
    pub fn extend(&self, order: usize) -> Self {
        assert!(order >= self.order());
        Self::with_order(self.center.clone(), self.coeffs.clone(), order)
    }

    /// Same coefficients over another center (reinterprets `t`).
    pub fn recenter(&self, center: F) -> Self {
        Self::new(center, self.coeffs.clone())
    }

    /// Representative polynomial in `x` of degree `< order`.
    pub fn to_poly(&self) -> Poly<F> {
        let t = Poly::linear_root(&self.center);
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &t) + &Poly::constant(c.clone());
        }
        acc
    }

    /// Coefficients as a polynomial in `t = x − center`.
    pub fn to_t_poly(&self) -> Poly<F> {
        Poly::new(self.coeffs.clone())
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::new(
            self.center.clone(),
            self.coeffs.iter().map(|c| c.mul_ref(s)).collect(),
        )
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(self.center.clone(), self.order());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse.
    pub fn invert(&self) -> Result<Self, AlgError> {
        if !self.is_unit() {
            return Err(AlgError::NotAUnit);
        }
        let e = self.order();
        let a0_inv = self.coeffs[0].inv();
        let mut v: Vec<F> = Vec::with_capacity(e);
        v.push(a0_inv.clone());
        for n in 1..e {
            let mut acc = F::zero();
            for k in 1..=n {
                acc = acc.add_ref(&self.coeffs[k].mul_ref(&v[n - k]));
            }
            v.push(-acc.mul_ref(&a0_inv));
        }
        Ok(Self::new(self.center.clone(), v))
    }

    /// `self / rhs` for a unit `rhs`.
    pub fn div(&self, rhs: &Self) -> Result<Self, AlgError> {
        Ok(self * &rhs.invert()?)
    }

    /// Square root with prescribed value at the center, by Newton iteration.
    ///
    /// Each pass doubles the number of correct coefficients, working at
    /// the precision reached so far.
    pub fn sqrt_with_seed(&self, seed: &F) -> Result<Self, AlgError> {
        if seed.is_zero() {
            return Err(AlgError::ZeroSeed);
        }
        if seed.square() != self.coeffs[0] {
            return Err(AlgError::BadSeed);
        }
        let e = self.order();
        let half = F::from_int(2).inv();
        let mut root = Self::constant(self.center.clone(), 1, seed.clone());
        let mut prec = 1;
        while prec < e {
            prec = (2 * prec).min(e);
            let r = root.extend(prec);
            let target = self.truncate(prec);
            let quotient = &target * &r.invert()?;
            root = (&r + &quotient).scale(&half);
        }
        Ok(root)
    }

    /// Evaluates a polynomial at this series: `p(s)`.
    pub fn eval_poly(&self, p: &Poly<F>) -> Self {
        let mut acc = Self::zero(self.center.clone(), self.order());
        for c in p.coeffs().iter().rev() {
            acc = &acc * self;
            acc.coeffs[0] = acc.coeffs[0].add_ref(c);
        }
        acc
    }

    /// Composition `self(inner)`, where `inner` has zero constant term.
    ///
    /// The result lives in `inner`'s ring; the coefficients of `self` are read
    /// as a polynomial in its own `t`.
    pub fn compose(&self, inner: &Self) -> Self {
        assert!(
            inner.coeffs[0].is_zero(),
            "composition needs an inner series without constant term"
        );
        let mut acc = Self::zero(inner.center.clone(), inner.order());
        for c in self.coeffs.iter().rev() {
            acc = &acc * inner;
            acc.coeffs[0] = acc.coeffs[0].add_ref(c);
        }
        acc
    }

    /// Compositional inverse of a series with zero constant term and nonzero
    /// linear term: the `r` with `self(r(u)) = u` modulo `u^order`.
    pub fn reversion(&self) -> Result<Self, AlgError> {
        assert!(self.coeffs[0].is_zero());
        let e = self.order();
        let zero = F::zero();
        if e == 1 {
            return Ok(Self::zero(zero, 1));
        }
        if self.coeffs[1].is_zero() {
            return Err(AlgError::NotAUnit);
        }
        let lin_inv = self.coeffs[1].inv();
        let mut r = Self::zero(zero.clone(), e);
        r.coeffs[1] = lin_inv.clone();
        for k in 2..e {
            let err = self.recenter(zero.clone()).compose(&r).coeffs[k].clone();
            r.coeffs[k] = r.coeffs[k].clone() - &(err * &lin_inv);
        }
        Ok(r)
    }
}

impl<F: Field> Add for &Series<F> {
    type Output = Series<F>;
    fn add(self, rhs: &Series<F>) -> Series<F> {
        self.check_ring(rhs);
        Series::new(
            self.center.clone(),
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.add_ref(b))
                .collect(),
        )
    }
}

impl<F: Field> Sub for &Series<F> {
    type Output = Series<F>;
    fn sub(self, rhs: &Series<F>) -> Series<F> {
        self.check_ring(rhs);
        Series::new(
            self.center.clone(),
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.sub_ref(b))
                .collect(),
        )
    }
}

impl<F: Field> Mul for &Series<F> {
    type Output = Series<F>;
    fn mul(self, rhs: &Series<F>) -> Series<F> {
        self.check_ring(rhs);
        let e = self.order();
        let mut out = vec![F::zero(); e];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..e - i].iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Series::new(self.center.clone(), out)
    }
}

impl<F: Field> Neg for &Series<F> {
    type Output = Series<F>;
    fn neg(self) -> Series<F> {
        Series::new(
            self.center.clone(),
            self.coeffs.iter().map(|c| -c.clone()).collect(),
        )
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl<F: Field> $tr for Series<F> {
            type Output = Series<F>;
            fn $m(self, rhs: Series<F>) -> Series<F> {
                (&self).$m(&rhs)
            }
        }
        impl<F: Field> $tr<&Series<F>> for Series<F> {
            type Output = Series<F>;
            fn $m(self, rhs: &Series<F>) -> Series<F> {
                (&self).$m(rhs)
            }
        }
    )*};
}

owned_ops!(Add add, Sub sub, Mul mul);

impl<F: Field> Neg for Series<F> {
    type Output = Series<F>;
    fn neg(self) -> Series<F> {
        -&self
    }
}

impl<F: fmt::Debug> fmt::Debug for Series<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Series")
            .field("center", &self.center)
            .field("coeffs", &self.coeffs)
            .finish()
    }
}

/// Multiplicative inverse of a unit series.
pub fn series_invert<F: Field>(u: &Series<F>) -> Result<Series<F>, AlgError> {
    u.invert()
}

/// Square root of `u` whose value at the center is `seed`.
pub fn hensel_sqrt<F: Field>(u: &Series<F>, seed: &F) -> Result<Series<F>, AlgError> {
    u.sqrt_with_seed(seed)
}

/// Index of the first nonzero coefficient, capped at the order.
pub fn poly_valuation<F: Field>(u: &Series<F>) -> usize {
    u.valuation()
}
