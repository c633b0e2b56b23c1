use num_bigint::BigInt;
use num_integer::Integer;

use crate::exactalg::{Field, Rational};

/// Environment variable overriding [`SynthOptions::enum_limit`].
pub const ENUM_LIMIT_VAR: &str = "JETMOVE_ENUM_LIMIT";

/// Knobs of the synthesis algorithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SynthOptions {
    /// How many candidates a generic choice may try before giving up.
    pub enum_limit: usize,
}

impl Default for SynthOptions {
    fn default() -> Self {
        SynthOptions { enum_limit: 1000 }
    }
}

impl SynthOptions {
    /// Defaults, with the limit taken from `JETMOVE_ENUM_LIMIT` when it parses.
    pub fn from_env() -> Self {
        let mut o = SynthOptions::default();
        if let Some(n) = std::env::var(ENUM_LIMIT_VAR)
            .ok()
            .and_then(|s| s.trim().parse().ok())
        {
            o.enum_limit = n;
        }
        o
    }
}

/// Every rational exactly once, by increasing height `max(|p|, q)`:
/// `0, 1, −1, 2, −2, 1/2, −1/2, 3, −3, 3/2, −3/2, 1/3, …`.
pub fn rationals() -> impl Iterator<Item = Rational> {
    let zero = std::iter::once(Rational::from_integer(BigInt::from(0)));
    let rest = (1i64..).flat_map(|h| {
        (1..=h).flat_map(move |q| {
            let nums: Vec<i64> = if q < h {
                if h.gcd(&q) == 1 { vec![h] } else { vec![] }
            } else {
                (1..h.max(2)).filter(|p| p.gcd(&h) == 1).collect()
            };
            nums.into_iter().flat_map(move |p| {
                let r = Rational::new(BigInt::from(p), BigInt::from(q));
                [r.clone(), -r]
            })
        })
    });
    zero.chain(rest)
}

/// The first `limit` rationals of [`rationals`], as field elements.
pub fn candidates<F: Field>(limit: usize) -> impl Iterator<Item = F> {
    rationals().take(limit).map(|q| F::from_rational(&q))
}

/// The rotation `(cos θ, sin θ)` with `tan(θ/2) = u`.
pub fn rotation_from_half_tangent<F: Field>(u: &F) -> (F, F) {
    let u2 = u.square();
    let den = F::one() + &u2;
    ((F::one() - &u2) / &den, (u.clone() + u) / &den)
}
