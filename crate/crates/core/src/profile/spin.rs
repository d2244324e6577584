use super::root_field;
use crate::arith;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{sort_canonical, Factorization, Poly};

/// The spin of `poly` over `base = F_Q`: the product of its images under
/// `a -> a^(Q^j)` for `j < s`, where `s` is the least integer with every
/// coefficient in `F_(Q^s)`. Returns the spin as a polynomial over `base`
/// together with `s`.
pub fn spin(poly: &Poly, base: &Field) -> Result<(Poly, u32)> {
    if poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = poly.field();
    let mut s = 1u64;
    for c in poly.coeffs() {
        let deg = field.element(*c).degree_over(base)? as u64;
        s = arith::lcm(s, deg).ok_or(Error::Overflow("spin length"))?;
    }
    let step = base.degree() as i64;
    let mut product = poly.clone();
    for j in 1..s as i64 {
        product = &product * &poly.frobenius_poly(step * j);
    }
    Ok((product.project_to(base)?, s as u32))
}

/// Factorization of `f(g(x))` for irreducible `f` of degree `k`, assembled
/// from the factors `R` of `g(x) - alpha` over `F_q(alpha)`: each `R` with
/// multiplicity `e` contributes its spin with multiplicity `e`, and every
/// spin has degree `k * deg R`.
pub fn factor_composition(f: &Poly, g: &Poly, cfg: &Config) -> Result<Factorization> {
    if g.degree().unwrap_or(0) < 1 {
        return Err(Error::DegreeTooSmall("g must have degree at least 1".into()));
    }
    let base = f.field();
    let k = f.deg() as u32;
    let (field, alpha) = root_field(f)?;
    let shifted = &g.embed_into(&field)? - &Poly::constant(&alpha);
    let inner = shifted.factor_with(cfg)?;
    let mut factors = Vec::with_capacity(inner.len());
    for (r, e) in &inner.factors {
        let (s_r, s) = spin(r, base)?;
        debug_assert_eq!(s, k, "spin length equals deg f");
        debug_assert_eq!(s_r.deg(), k as usize * r.deg());
        factors.push((s_r, *e));
    }
    sort_canonical(&mut factors);
    let unit = &f.leading().unwrap() * &g.leading().unwrap().pow(k as u128);
    Ok(Factorization { unit, factors })
}
