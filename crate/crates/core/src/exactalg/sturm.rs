//! Real root counting with Sturm chains.

use std::cmp::Ordering;

use super::error::AlgError;
use super::field::OrderedField;
use super::poly::Poly;

/// Where to count roots.
#[derive(Clone, Debug, PartialEq)]
pub enum RootRange<F> {
    WholeLine,
    /// Closed interval `[lo, hi]`.
    Interval(F, F),
}

impl<F: OrderedField> RootRange<F> {
    pub fn closed(lo: F, hi: F) -> Self {
        RootRange::Interval(lo, hi)
    }

    pub fn unit_interval() -> Self {
        RootRange::Interval(-F::one(), F::one())
    }
}

/// Sign-variation data behind a root count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SturmCount {
    /// Distinct real roots in the range.
    pub roots: usize,
    /// Number of polynomials in the chain.
    pub chain_len: usize,
    /// Sign variations at the lower and upper end.
    pub variations: (usize, usize),
    /// Roots sitting exactly on the interval ends, split off before counting.
    pub endpoint_roots: usize,
}

/// The Sturm chain `p, p', −rem(p, p'), …` of `p`.
pub fn sturm_chain<F: OrderedField>(p: &Poly<F>) -> Vec<Poly<F>> {
    let mut chain = vec![p.clone()];
    if p.degree().unwrap_or(0) == 0 {
        return chain;
    }
    chain.push(p.derivative());
    loop {
        let n = chain.len();
        let r = chain[n - 2].rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(-r);
    }
    chain
}

fn count_changes(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut n = 0;
    for s in signs.filter(|s| *s != Ordering::Equal) {
        if last != Ordering::Equal && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// Sign variations of the chain at `x`.
pub fn variations_at<F: OrderedField>(chain: &[Poly<F>], x: &F) -> usize {
    count_changes(chain.iter().map(|p| p.eval(x).sign()))
}

/// Sign variations of the chain at `+∞` (`positive`) or `−∞`.
pub fn variations_at_infinity<F: OrderedField>(chain: &[Poly<F>], positive: bool) -> usize {
    count_changes(chain.iter().map(|p| {
        let d = p.degree().unwrap_or(0);
        let s = p.leading().map_or(Ordering::Equal, |c| c.sign());
        if !positive && d % 2 == 1 {
            s.reverse()
        } else {
            s
        }
    }))
}

/// Distinct real roots of `p` in the range, with the variation counts that prove it.
///
/// Multiple roots are counted once: the chain is built on the square-free
/// part. Roots that fall exactly on an interval end are divided out first
/// and added back, so the chain is only ever evaluated away from roots.
pub fn sturm_count<F: OrderedField>(
    p: &Poly<F>,
    range: &RootRange<F>,
) -> Result<SturmCount, AlgError> {
    if p.is_zero() {
        return Err(AlgError::ZeroPolynomial);
    }
    let mut sf = p.square_free();
    match range {
        RootRange::WholeLine => {
            let chain = sturm_chain(&sf);
            let lo = variations_at_infinity(&chain, false);
            let hi = variations_at_infinity(&chain, true);
            Ok(SturmCount {
                roots: lo - hi,
                chain_len: chain.len(),
                variations: (lo, hi),
                endpoint_roots: 0,
            })
        }
        RootRange::Interval(a, b) => {
            if a.cmp_exact(b) == Ordering::Greater {
                return Err(AlgError::EmptyInterval);
            }
            let mut endpoint_roots = 0;
            for end in [a, b] {
                if sf.eval(end).is_zero() {
                    sf = sf.div_rem(&Poly::linear_root(end)).0;
                    endpoint_roots += 1;
                }
            }
            let chain = sturm_chain(&sf);
            let lo = variations_at(&chain, a);
            let hi = variations_at(&chain, b);
            Ok(SturmCount {
                roots: lo - hi + endpoint_roots,
                chain_len: chain.len(),
                variations: (lo, hi),
                endpoint_roots,
            })
        }
    }
}

/// Number of distinct real roots of `p` in the range.
pub fn sturm_root_count<F: OrderedField>(
    p: &Poly<F>,
    range: &RootRange<F>,
) -> Result<usize, AlgError> {
    sturm_count(p, range).map(|c| c.roots)
}

/// A closed interval inside the range containing exactly one root of `p`,
/// the leftmost one, or `None` when there are no roots.
pub fn isolate_root<F: OrderedField>(
    p: &Poly<F>,
    range: &RootRange<F>,
) -> Result<Option<(F, F)>, AlgError> {
    let count = |lo: &F, hi: &F| sturm_root_count(p, &RootRange::Interval(lo.clone(), hi.clone()));
    let (mut lo, mut hi) = match range {
        RootRange::WholeLine => {
            if p.is_zero() {
                return Err(AlgError::ZeroPolynomial);
            }
            if p.degree() == Some(0) {
                return Ok(None);
            }
            let b = p.cauchy_bound();
            (-b.clone(), b)
        }
        RootRange::Interval(a, b) => (a.clone(), b.clone()),
    };
    let mut n = count(&lo, &hi)?;
    if n == 0 {
        return Ok(None);
    }
    let half = F::from_int(2).inv();
    while n > 1 {
        let mid = (lo.clone() + &hi) * &half;
        let left = count(&lo, &mid)?;
        if left >= 1 {
            hi = mid;
            n = left;
        } else {
            lo = mid;
            n = count(&lo, &hi)?;
        }
    }
    Ok(Some((lo, hi)))
}
