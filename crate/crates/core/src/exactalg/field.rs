//! Scalar traits shared by the polynomial and series code.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ratops;

/// Arbitrary precision rational number.
pub type Rational = BigRational;

/// A commutative field usable as a coefficient type.
///
/// Exactness is not required by this trait (`f64` implements it), but every
/// algorithm that branches on equality or sign asks for [`OrderedField`].
pub trait Field:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    fn from_int(n: i64) -> Self;

    fn from_rational(q: &Rational) -> Self;

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    fn square(&self) -> Self {
        self.mul_ref(self)
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        self.clone() + rhs
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.clone() - rhs
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self.clone() * rhs
    }
}

/// A field with decidable equality and an exact sign.
pub trait OrderedField: Field {
    /// Sign of `self` as an ordering against zero.
    fn sign(&self) -> Ordering;

    fn abs(&self) -> Self {
        if self.sign() == Ordering::Less {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn cmp_exact(&self, other: &Self) -> Ordering {
        (self.clone() - other).sign()
    }
}

/// Ordered field in which square roots can be tested for membership.
pub trait SqrtField: OrderedField {
    /// The nonnegative square root, when it lies in the field.
    fn sqrt_exact(&self) -> Option<Self>;

    /// The nonnegative square root, enlarging the field if the type allows it.
    fn sqrt_extend(&self) -> Option<Self> {
        self.sqrt_exact()
    }
}

impl Field for Rational {
    fn from_int(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn inv(&self) -> Self {
        self.recip()
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        ratops::add(self, rhs)
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        ratops::sub(self, rhs)
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        ratops::mul(self, rhs)
    }
}

impl OrderedField for Rational {
    fn sign(&self) -> Ordering {
        if self.is_zero() {
            Ordering::Equal
        } else if self.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }
}

impl SqrtField for Rational {
    fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = integer_sqrt_exact(self.numer())?;
        let d = integer_sqrt_exact(self.denom())?;
        Some(Rational::new(n, d))
    }
}

fn integer_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

impl Field for f64 {
    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn from_rational(q: &Rational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }
}

impl Field for f32 {
    fn from_int(n: i64) -> Self {
        n as f32
    }

    fn from_rational(q: &Rational) -> Self {
        q.to_f32().unwrap_or(f32::NAN)
    }
}

/// Shorthand for building rationals in code and tests.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}
