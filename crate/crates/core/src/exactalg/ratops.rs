//! Rational arithmetic with a subquadratic gcd for the large coordinates of
//! tower elements. Results are always in lowest terms.

use dashu_int::ops::Gcd;
use dashu_int::UBig;
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::Rational;

/// Below this many bits the conversion costs more than it saves.
const SMALL_BITS: u64 = 256;

fn to_ubig(a: &BigUint) -> UBig {
    UBig::from_words(&a.to_u64_digits())
}

fn from_ubig(a: &UBig) -> BigUint {
    BigUint::from_bytes_le(&a.to_le_bytes())
}

/// Nonnegative gcd.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() || a.is_one() || b.is_one() {
        return if b.is_zero() { a.abs() } else { BigInt::one() };
    }
    if let (Some(x), Some(y)) = (a.abs().to_u64(), b.abs().to_u64()) {
        return BigInt::from(Integer::gcd(&x, &y));
    }
    if a.bits().max(b.bits()) < SMALL_BITS {
        return Integer::gcd(a, b);
    }
    let g = to_ubig(a.magnitude()).gcd(&to_ubig(b.magnitude()));
    BigInt::from_biguint(Sign::Plus, from_ubig(&g))
}

/// `num/den` in lowest terms with a positive denominator.
pub fn reduced(num: BigInt, den: BigInt) -> Rational {
    assert!(!den.is_zero(), "zero denominator");
    if num.is_zero() {
        return Rational::zero();
    }
    let g = gcd(&num, &den);
    let (mut n, mut d) = if g.is_one() { (num, den) } else { (num / &g, den / &g) };
    if d.is_negative() {
        n = -n;
        d = -d;
    }
    Rational::new_raw(n, d)
}

pub fn add(a: &Rational, b: &Rational) -> Rational {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.denom() == b.denom() {
        return reduced(a.numer() + b.numer(), a.denom().clone());
    }
    reduced(
        a.numer() * b.denom() + b.numer() * a.denom(),
        a.denom() * b.denom(),
    )
}

pub fn sub(a: &Rational, b: &Rational) -> Rational {
    add(a, &-b)
}

pub fn mul(a: &Rational, b: &Rational) -> Rational {
    if a.is_zero() || b.is_zero() {
        return Rational::zero();
    }
    let g1 = gcd(a.numer(), b.denom());
    let g2 = gcd(b.numer(), a.denom());
    let n = (a.numer() / &g1) * (b.numer() / &g2);
    let d = (a.denom() / &g2) * (b.denom() / &g1);
    Rational::new_raw(n, d)
}
