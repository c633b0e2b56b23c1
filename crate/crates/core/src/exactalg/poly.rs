//! Dense univariate polynomials over a field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::field::{Field, OrderedField};

/// Polynomial with coefficients in ascending degree; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// The variable `x`.
    pub fn x() -> Self {
        Self::new(vec![F::zero(), F::one()])
    }

    /// `c·x^k`
    pub fn monomial(c: F, k: usize) -> Self {
        let mut coeffs = vec![F::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `x − c`
    pub fn linear_root(c: &F) -> Self {
        Self::new(vec![-c.clone(), F::one()])
    }

    /// `(x − c)^k`
    pub fn root_power(c: &F, k: usize) -> Self {
        Self::linear_root(c).pow(k)
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| F::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(x).add_ref(c);
        }
        acc
    }

    /// Value of the degree-`d` homogenization at `(x0 : x1)`, i.e. `Σ c_k x0^k x1^(d−k)`.
    pub fn eval_homogeneous(&self, d: usize, x0: &F, x1: &F) -> F {
        assert!(self.degree().map_or(true, |k| k <= d));
        let mut x1_pows = Vec::with_capacity(d + 1);
        x1_pows.push(F::one());
        for i in 0..d {
            let next = x1_pows[i].clone() * x1;
            x1_pows.push(next);
        }
        let mut acc = F::zero();
        for k in (0..=d).rev() {
            acc = acc * x0 + &(self.coeff(k) * &x1_pows[d - k]);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * &F::from_int(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s).collect())
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Polynomial division with remainder.
    ///
    /// Panics on division by the zero polynomial.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("polynomial division by zero");
        let lead_inv = d.coeffs[dd].inv();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![F::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = r[i + dd].clone() * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] = r[i + j].clone() - &(c.clone() * dc);
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&l.inv()),
        }
    }

    /// Monic greatest common divisor (zero when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self / gcd(self, self')`: same roots, each simple.
    pub fn square_free(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }

    /// `self(inner(x))`
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Self::constant(c.clone());
        }
        acc
    }

    /// Coefficients `b_k` with `self = Σ b_k (x − c)^k`.
    pub fn taylor_at(&self, c: &F) -> Vec<F> {
        let mut b = self.coeffs.clone();
        let n = b.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = b[j + 1].mul_ref(c);
                b[j] = b[j].add_ref(&t);
            }
        }
        b
    }

    /// Coefficients of `x^d · self(1/x)`; requires `d ≥ deg self`.
    pub fn reversed(&self, d: usize) -> Self {
        assert!(self.degree().map_or(true, |k| k <= d));
        Self::new((0..=d).map(|k| self.coeff(d - k)).collect())
    }
}

impl<F: OrderedField> Poly<F> {
    /// Max-norm Cauchy bound: every real root lies in `(−B, B)`.
    pub fn cauchy_bound(&self) -> F {
        let d = self.degree().expect("bound of zero polynomial");
        let lead = self.coeffs[d].abs();
        let mut m = F::zero();
        for c in &self.coeffs[..d] {
            let q = c.abs() / &lead;
            if q.cmp_exact(&m) == std::cmp::Ordering::Greater {
                m = q;
            }
        }
        m + &F::one()
    }
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Poly::new(out)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl<F: Field> $tr for Poly<F> {
            type Output = Poly<F>;
            fn $m(self, rhs: Poly<F>) -> Poly<F> {
                (&self).$m(&rhs)
            }
        }
        impl<F: Field> $tr<&Poly<F>> for Poly<F> {
            type Output = Poly<F>;
            fn $m(self, rhs: &Poly<F>) -> Poly<F> {
                (&self).$m(rhs)
            }
        }
    )*};
}

owned_ops!(Add add, Sub sub, Mul mul);

impl<F: Field> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        -&self
    }
}

impl<F: Field + fmt::Display> Poly<F> {
    /// Human-readable form in the named variable, highest degree first.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let needs_parens = cs.contains(' ');
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let term = if k == 0 {
                if needs_parens {
                    format!("({cs})")
                } else {
                    cs
                }
            } else if c.is_one() {
                mono
            } else if needs_parens {
                format!("({cs})*{mono}")
            } else if cs == "-1" {
                format!("-{mono}")
            } else {
                format!("{cs}*{mono}")
            };
            terms.push(term);
        }
        terms.join(" + ").replace("+ -", "- ")
    }
}

impl<F: Field + fmt::Display> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

impl<F: fmt::Debug> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Poly").field(&self.coeffs).finish()
    }
}
