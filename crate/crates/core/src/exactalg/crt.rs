//! Hermite interpolation: the Chinese remainder theorem in `F[x]`.

use super::error::AlgError;
use super::field::Field;
use super::poly::Poly;
use super::series::Series;

/// The unique `p` of degree `< Σ orders` with `p ≡ value_i mod (x − center_i)^{order_i}`.
///
/// Each residue carries its center and order. Residues are folded in one at a
/// time, Newton style: `p ← p + M·s` where `M` is the product of the moduli
/// seen so far and `s ≡ (v − p)/M` at the new center.
pub fn crt_combine<F: Field>(residues: &[Series<F>]) -> Result<Poly<F>, AlgError> {
    for (i, a) in residues.iter().enumerate() {
        if residues[..i].iter().any(|b| b.center() == a.center()) {
            return Err(AlgError::DuplicateCenter(format!("{:?}", a.center())));
        }
    }
    let mut p = Poly::zero();
    let mut modulus = Poly::one();
    for v in residues {
        let c = v.center().clone();
        let e = v.order();
        let p_here = Series::from_poly(&p, c.clone(), e);
        let m_here = Series::from_poly(&modulus, c.clone(), e);
        let s = (v - &p_here).div(&m_here)?;
        p = &p + &(&modulus * &s.to_poly());
        modulus = &modulus * &Poly::root_power(&c, e);
    }
    Ok(p)
}

/// Product of the moduli `(x − center_i)^{order_i}`.
pub fn crt_modulus<F: Field>(residues: &[Series<F>]) -> Poly<F> {
    residues.iter().fold(Poly::one(), |m, v| {
        &m * &Poly::root_power(v.center(), v.order())
    })
}
