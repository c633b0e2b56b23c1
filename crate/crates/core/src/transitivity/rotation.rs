use crate::error::{Error, Result};
use crate::exactalg::{hensel_sqrt, OrderedField, Poly, Series};

fn one_minus_square<F: OrderedField>(center: &F, order: usize) -> Series<F> {
    let p = Poly::new(vec![F::one(), F::zero(), -F::one()]);
    Series::from_poly(&p, center.clone(), order)
}

fn fail(msg: &str) -> Error {
    Error::PreconditionFailed(msg.to_string())
}

/// Solves `(1 − a²)f = (1 + a²)g` and `2af = (1 + a²)h` modulo `(x − x_i)^e`.
///
/// Inputs are series at a common center `x_i` with `x² + f² ≡ 1`,
/// `x² + g² + h² ≡ 1` and `f(x_i) = g(x_i) ≠ 0`. With `d` the valuation of `h`,
/// `f` and `g` are lifted to precision `e + 2d` and `a = h·(f + g)⁻¹`.
pub fn solve_rotation_parameter<F: OrderedField>(
    f: &Series<F>,
    g: &Series<F>,
    h: &Series<F>,
) -> Result<Series<F>> {
    if !f.same_ring(g) || !f.same_ring(h) {
        return Err(fail("f, g, h live in different rings"));
    }
    let (c, e) = (f.center().clone(), f.order());
    let y0 = f.constant_term();
    if y0.is_zero() || g.constant_term() != y0 {
        return Err(fail("f and g must agree and be nonzero at the center"));
    }
    let one_x2 = one_minus_square(&c, e);
    if &(f * f) != &one_x2 || &(&(g * g) + &(h * h)) != &one_x2 {
        return Err(fail("x² + f² ≡ 1 and x² + g² + h² ≡ 1 are required"));
    }
    if h.is_zero() {
        return Ok(Series::zero(c, e));
    }
    let d = h.valuation();
    let big = e + 2 * d;
    let h_bar = h.extend(big);
    let f_bar = hensel_sqrt(&one_minus_square(&c, big), y0)?;
    let g_bar = hensel_sqrt(&(&one_minus_square(&c, big) - &(&h_bar * &h_bar)), g.constant_term())?;
    let a = (&h_bar * &(&f_bar + &g_bar).invert()?).truncate(e);
    Ok(a)
}
