//! `q`-linearized polynomials, `F_q`-orders and the closed form for `g`
//! whose `q`-associate is iterated.

use crate::arith::{self, checked_pow};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::poly::{canonical_cmp, Poly};
use crate::profile::{root_field, CensusRow, FactorCensus, IterProfile, OrderTag};

/// A polynomial `g = sum a_i x^i` paired with its linearized `q`-associate
/// `L_g = sum a_i x^(q^i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QAssociate {
    pub conventional: Poly,
    pub linearized: Poly,
}

impl QAssociate {
    pub fn from_conventional(g: &Poly) -> Result<Self> {
        let field = g.field();
        let q = field.order();
        let mut coeffs = Vec::new();
        for (i, &c) in g.coeffs().iter().enumerate() {
            if c == 0 {
                continue;
            }
            let e = checked_pow(q, i as u64).ok_or(Error::Overflow("q-associate degree"))? as usize;
            if e >= coeffs.len() {
                coeffs.resize(e + 1, 0);
            }
            coeffs[e] = c;
        }
        Ok(QAssociate { conventional: g.clone(), linearized: Poly::from_coeffs(field, &coeffs)? })
    }

    /// Inverse transcription; every exponent of `l` must be a power of `q`.
    pub fn from_linearized(l: &Poly) -> Result<Self> {
        let field = l.field();
        let q = field.order() as usize;
        let mut coeffs = Vec::new();
        for (e, &c) in l.coeffs().iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut i = 0;
            let mut pow = 1usize;
            while pow < e {
                pow *= q;
                i += 1;
            }
            if pow != e {
                return Err(Error::NotLinearized);
            }
            if i >= coeffs.len() {
                coeffs.resize(i + 1, 0);
            }
            coeffs[i] = c;
        }
        Ok(QAssociate { conventional: Poly::from_coeffs(field, &coeffs)?, linearized: l.clone() })
    }

    /// `L_g(a) = sum a_i a^(q^i)` for `a` in an extension of the field of `g`.
    pub fn eval(&self, a: &FieldElement) -> Result<FieldElement> {
        linearized_eval(&self.conventional, a)
    }
}

fn linearized_eval(g: &Poly, a: &FieldElement) -> Result<FieldElement> {
    let target = a.field();
    let emb = target.embedding_from(g.field())?;
    let step = g.field().degree() as i64;
    let mut acc = target.zero();
    let mut power = a.clone();
    for (i, c) in g.coeffs().iter().enumerate() {
        if i > 0 {
            power = power.frobenius(step);
        }
        if *c != 0 {
            acc = &acc + &(&emb.map(&g.field().element(*c)) * &power);
        }
    }
    Ok(acc)
}

/// All monic divisors of `prod P_i^(e_i)`, as exponent tuples.
fn exponent_tuples(bounds: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for &b in bounds {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..=b).map(move |e| {
                    let mut t = t.clone();
                    t.push(e);
                    t
                })
            })
            .collect();
    }
    out
}

fn product(field: &Field, factors: &[(Poly, u64)], exps: &[u64]) -> Poly {
    factors.iter().zip(exps).fold(Poly::one(field), |acc, ((p, _), &e)| &acc * &p.pow(e))
}

/// The `F_q`-order of a nonzero `alpha`: the monic `h` of least degree over
/// `base` with `L_h(alpha) = 0`. It divides `x^k - 1` where `k` is the degree
/// of `alpha` over `base`.
pub fn fq_order(alpha: &FieldElement, base: &Field) -> Result<Poly> {
    if alpha.is_zero() {
        return Err(Error::ZeroElement);
    }
    let k = alpha.degree_over(base)? as usize;
    let mut xk1 = vec![0u64; k + 1];
    xk1[k] = 1;
    let xk1 = &Poly::from_coeffs(base, &xk1)? - &Poly::one(base);
    let fac = xk1.factor()?;
    let bounds: Vec<u64> = fac.factors.iter().map(|(_, e)| *e).collect();
    let mut candidates: Vec<Poly> = exponent_tuples(&bounds).iter().map(|t| product(base, &fac.factors, t)).collect();
    candidates.sort_by(canonical_cmp);
    for h in candidates {
        if linearized_eval(&h, alpha)?.is_zero() {
            return Ok(h);
        }
    }
    unreachable!("x^k - 1 annihilates alpha")
}

/// `Phi_q(f)`, the number of units of `F_q[x]/(f)`.
pub fn phi_q(f: &Poly) -> Result<u128> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Ok(1);
    }
    let q = f.field().order() as u128;
    let mut acc = 1u128;
    for (p, e) in &f.factor()?.factors {
        acc = acc.checked_mul(phi_prime_power(q, p.deg() as u32, *e)?).ok_or(Error::Overflow("Phi_q"))?;
    }
    Ok(acc)
}

/// `q^((e-1) d) (q^d - 1)`.
fn phi_prime_power(q: u128, d: u32, e: u64) -> Result<u128> {
    let qd = q.checked_pow(d).ok_or(Error::Overflow("Phi_q"))?;
    let head = u32::try_from((e - 1) * d as u64).ok().and_then(|x| q.checked_pow(x)).ok_or(Error::Overflow("Phi_q"))?;
    head.checked_mul(qd - 1).ok_or(Error::Overflow("Phi_q"))
}

/// `ord(x, F)` from the orders of the distinct irreducible factors of `F`:
/// their lcm times `p^ceil(log_p nu(F))`.
pub fn ord_x_mod(f: &Poly) -> Result<u64> {
    if f.is_zero() || f.coeffs()[0] == 0 {
        return Err(Error::DivisibleByX);
    }
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let fac = f.factor()?;
    let parts: Vec<(u64, u64)> = fac.factors.iter().map(|(p, e)| Ok((p.order()?, *e))).collect::<Result<_>>()?;
    ord_from_parts(f.field().characteristic(), &parts)
}

/// `lcm(o_i) * p^ceil(log_p max e_i)` for irreducible factors of orders
/// `o_i` and multiplicities `e_i`.
fn ord_from_parts(p: u64, parts: &[(u64, u64)]) -> Result<u64> {
    let mut l = 1u64;
    let mut nu = 1u64;
    for &(o, e) in parts {
        l = arith::lcm(l, o).ok_or(Error::Overflow("ord(x, F)"))?;
        nu = nu.max(e);
    }
    let pp = checked_pow(p, arith::ceil_log(p, nu) as u64).ok_or(Error::Overflow("ord(x, F)"))?;
    l.checked_mul(pp).ok_or(Error::Overflow("ord(x, F)"))
}

/// `g = g1 * g2`, where no irreducible factor of `g1` divides `h` and every
/// irreducible factor of `g2` does. `g2` is monic; `g1` carries the leading
/// coefficient of `g`.
pub fn split_poly(h: &Poly, g: &Poly) -> Result<(Poly, Poly)> {
    if g.is_zero() || g.coeffs()[0] == 0 {
        return Err(Error::DivisibleByX);
    }
    if g.is_constant() {
        return Ok((g.clone(), Poly::one(g.field())));
    }
    let fac = g.factor()?;
    let mut g1 = Poly::constant(&fac.unit);
    let mut g2 = Poly::one(g.field());
    for (p, e) in &fac.factors {
        if h.rem(p)?.is_zero() {
            g2 = &g2 * &p.pow(*e);
        } else {
            g1 = &g1 * &p.pow(*e);
        }
    }
    Ok((g1, g2))
}

/// Profile of `f(L_g^(n)(x)) = f(L_(g^n)(x))` for irreducible `f` of degree
/// `k` and `g(0) != 0`.
///
/// With `h` the `F_q`-order of a root of `f`, `g` made monic and split as
/// `g1 g2` with respect to `h`, each monic `G | g1^n` contributes
/// `k q^(m n) Phi_q(G) / ord(x, G g2^n h)` factors of degree
/// `ord(x, G g2^n h)`, where `m = deg g2`. All multiplicities are 1 and each
/// row is tagged with the `F_q`-order `G g2^n h` of the roots it covers.
pub fn reis_profile(f: &Poly, g: &Poly, n: u32) -> Result<IterProfile> {
    let base = f.field();
    if !base.same(g.field()) {
        return Err(Error::FieldMismatch);
    }
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_irreducible()? {
        return Err(Error::NotIrreducible);
    }
    if f.deg() == 1 && f.coeff(0).is_zero() {
        return Err(Error::MonomialF);
    }
    if g.coeffs()[0] == 0 {
        return Err(Error::DivisibleByX);
    }
    let q = base.order();
    let p = base.characteristic();
    let k = f.deg() as u64;
    let total = u32::try_from(g.deg() as u64 * n as u64)
        .ok()
        .and_then(|dn| (q as u128).checked_pow(dn))
        .and_then(|x| x.checked_mul(k as u128))
        .ok_or(Error::Overflow("k q^(D n)"))?;

    let (_, alpha) = root_field(f)?;
    let h = fq_order(&alpha, base)?;
    let g = g.monic();
    let g_fac = if g.is_constant() { Vec::new() } else { g.factor()?.factors };
    let (g1, g2): (Vec<_>, Vec<_>) = g_fac
        .into_iter()
        .map(|pe| Ok((h.rem(&pe.0)?.is_zero(), pe)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .partition(|(divides_h, _)| !divides_h);
    let g1: Vec<(Poly, u64)> = g1.into_iter().map(|(_, pe)| pe).collect();
    let g2: Vec<(Poly, u64)> = g2.into_iter().map(|(_, pe)| pe).collect();
    let m: u64 = g2.iter().map(|(p, e)| p.deg() as u64 * e).sum();

    // The irreducible factors of g2^n h are those of h.
    let h_fac = if h.is_constant() { Vec::new() } else { h.factor()?.factors };
    let fixed: Vec<(Poly, u64)> = h_fac
        .iter()
        .map(|(p, e)| (p.clone(), e + n as u64 * g2.iter().find(|(r, _)| r == p).map_or(0, |(_, s)| *s)))
        .collect();
    let fixed_orders: Vec<(u64, u64)> = fixed.iter().map(|(p, e)| Ok((p.order()?, *e))).collect::<Result<_>>()?;
    let fixed_poly = product(base, &fixed, &fixed.iter().map(|(_, e)| *e).collect::<Vec<_>>());
    let g1_orders: Vec<u64> = g1.iter().map(|(p, _)| p.order()).collect::<Result<_>>()?;

    let scale = (k as u128)
        .checked_mul((q as u128).checked_pow((m * n as u64) as u32).ok_or(Error::Overflow("k q^(mn)"))?)
        .ok_or(Error::Overflow("k q^(mn)"))?;
    let bounds: Vec<u64> = g1.iter().map(|(_, e)| e * n as u64).collect();
    let mut rows = Vec::new();
    let mut covered = 0u128;
    for t in exponent_tuples(&bounds) {
        let mut parts = fixed_orders.clone();
        let mut phi = 1u128;
        for ((&o, (pp, _)), &e) in g1_orders.iter().zip(&g1).zip(&t) {
            if e > 0 {
                parts.push((o, e));
                phi =
                    phi.checked_mul(phi_prime_power(q as u128, pp.deg() as u32, e)?).ok_or(Error::Overflow("Phi_q"))?;
            }
        }
        let degree = ord_from_parts(p, &parts)?;
        let numerator = scale.checked_mul(phi).ok_or(Error::Overflow("factor count"))?;
        if numerator % degree as u128 != 0 {
            return Err(Error::HypothesisViolated(format!("{degree} does not divide {numerator}")));
        }
        let count = u64::try_from(numerator / degree as u128).map_err(|_| Error::Overflow("factor count"))?;
        covered += numerator;
        let tag = &product(base, &g1, &t) * &fixed_poly;
        rows.push(CensusRow { degree, multiplicity: 1, count, order: Some(OrderTag::FqOrder(tag)) });
    }
    if covered != total {
        return Err(Error::HypothesisViolated(format!("closed form covers degree {covered}, expected {total}")));
    }
    Ok(IterProfile::from_census(n, FactorCensus::new(rows)))
}
