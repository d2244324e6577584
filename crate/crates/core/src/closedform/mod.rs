//! Closed-form profiles for monomial and `q`-linearized `g`, with the
//! integer and polynomial order machinery they rely on.

mod linearized;
mod special;

use num_rational::Ratio;

use crate::arith::{self, Factored};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::profile::{CensusRow, FactorCensus, IterProfile, OrderTag};

pub use linearized::{fq_order, ord_x_mod, phi_q, reis_profile, split_poly, QAssociate};
pub use special::{closed_form_profile, exp_growth_construction, reduce_special_g, ExpGrowthReport, SpecialG};

/// `nu_r(a^n - 1)` for a prime `r` dividing `a - 1`, by lifting the exponent.
pub fn lte_valuation(r: u64, a: u64, n: u64) -> Result<u32> {
    if !arith::is_prime(r) {
        return Err(Error::HypothesisViolated(format!("{r} is not prime")));
    }
    if a < 2 || n == 0 || !(a - 1).is_multiple_of(r) {
        return Err(Error::HypothesisViolated(format!("{r} must divide a - 1 = {}", a.wrapping_sub(1))));
    }
    if r != 2 {
        return Ok(arith::valuation(r, a - 1) + arith::valuation(r, n));
    }
    if n % 2 == 1 {
        return Ok(arith::valuation(2, a - 1));
    }
    let a2m1 = (a as u128 * a as u128 - 1) as u64;
    let v = if a2m1 == 0 { 0 } else { arith::valuation(2, a2m1) };
    Ok(v + arith::valuation(2, n) - 1)
}

/// `D = d1 * d2` where `gcd(d1, e) = 1` and every prime of `d2` divides `e`.
pub fn split_int(e: u64, d: u64) -> (u64, u64) {
    let mut d2 = 1;
    for &(r, k) in &Factored::new(d).powers {
        if e.is_multiple_of(r) {
            d2 *= r.pow(k);
        }
    }
    (d / d2, d2)
}

/// Bounds `L <= phi(b) / ord(a, b) <= U` valid for every `b` whose set of
/// prime factors is exactly `primes`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderRatioBounds {
    pub primes: Vec<u64>,
    pub base: u64,
    /// `a`, or `a^2` when `2` is among the primes and `a = 3 mod 4`.
    pub effective_base: u64,
    /// Product of the primes.
    pub r: u64,
    /// `ord(effective_base, r)`.
    pub s: u64,
    /// `nu_(r_i)(effective_base^s - 1)` for each prime.
    pub exponents: Vec<u32>,
    pub lower: Ratio<u128>,
    pub upper: Ratio<u128>,
}

pub fn order_ratio_bounds(primes: &[u64], a: u64) -> Result<OrderRatioBounds> {
    let mut primes = primes.to_vec();
    primes.sort_unstable();
    primes.dedup();
    if primes.is_empty() || primes.iter().any(|&r| !arith::is_prime(r)) {
        return Err(Error::HypothesisViolated("a nonempty set of primes is required".into()));
    }
    if a < 2 {
        return Err(Error::HypothesisViolated("the base must be at least 2".into()));
    }
    if let Some(&r) = primes.iter().find(|&&r| a.is_multiple_of(r)) {
        return Err(Error::NotCoprime { a, b: r });
    }
    let squared = primes.contains(&2) && a % 4 == 3;
    let base = if squared { a * a } else { a };
    let r: u64 = primes.iter().product();
    let s = arith::int_order(base, r)?;
    let big = (base as u128).checked_pow(s as u32).ok_or(Error::Overflow("order ratio bounds"))? - 1;
    let exponents = primes
        .iter()
        .map(|&p| {
            let mut v = 0;
            let mut x = big;
            while x % p as u128 == 0 {
                x /= p as u128;
                v += 1;
            }
            v
        })
        .collect();
    let phi_r: u128 = primes.iter().map(|&p| (p - 1) as u128).product();
    let mut lower = Ratio::new(phi_r, s as u128);
    let upper = Ratio::new(phi_r * big, r as u128 * s as u128);
    if squared {
        lower /= 2;
    }
    Ok(OrderRatioBounds { primes, base: a, effective_base: base, r, s, exponents, lower, upper })
}

/// Positive divisors of `prod r_i^(e_i * n)` for the given prime powers.
fn divisors_of_power(powers: &[(u64, u32)], n: u32) -> Result<Vec<u64>> {
    let mut divs = vec![1u64];
    for &(r, e) in powers {
        let top = e as u64 * n as u64;
        let mut next = Vec::with_capacity(divs.len() * (top as usize + 1));
        for &d in &divs {
            let mut x = d;
            next.push(x);
            for _ in 0..top {
                x = x.checked_mul(r).ok_or(Error::Overflow("divisor enumeration"))?;
                next.push(x);
            }
        }
        divs = next;
    }
    divs.sort_unstable();
    Ok(divs)
}

fn checked_pow(base: u64, exp: u32, what: &'static str) -> Result<u64> {
    base.checked_pow(exp).ok_or(Error::Overflow(what))
}

/// Profile of `f(x^(D^n))` for irreducible `f` of degree `k` and order `e`,
/// with `p` not dividing `D`.
///
/// Writing `D = d1 d2` as in [`split_int`], each divisor `M` of `d1^n`
/// contributes `k d2^n phi(M) / ord(q, M d2^n e)` factors of degree
/// `ord(q, M d2^n e)` and order `M d2^n e`, all with multiplicity 1.
pub fn butler_profile(f: &Poly, d: u64, n: u32) -> Result<IterProfile> {
    let field = f.field();
    let q = field.order();
    let p = field.characteristic();
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if f.deg() == 1 && f.coeff(0).is_zero() {
        return Err(Error::MonomialF);
    }
    if !f.is_irreducible()? {
        return Err(Error::NotIrreducible);
    }
    if d.is_multiple_of(p) {
        return Err(Error::PDividesD { p, d });
    }
    if d < 2 {
        return Err(Error::DegreeTooSmall("D must be at least 2".into()));
    }
    let k = f.deg() as u64;
    let e = f.order()?;
    let (d1, d2) = split_int(e, d);
    let d2n = checked_pow(d2, n, "d2^n")?;
    let base = d2n.checked_mul(e).ok_or(Error::Overflow("d2^n e"))?;
    let d1_powers = Factored::new(d1).powers;
    let mut rows = Vec::new();
    for m in divisors_of_power(&d1_powers, n)? {
        let order = m.checked_mul(base).ok_or(Error::Overflow("M d2^n e"))?;
        let degree = arith::int_order(q, order)?;
        let phi = Factored::new(m).totient();
        let total = k as u128 * d2n as u128 * phi as u128;
        if !total.is_multiple_of(degree as u128) {
            return Err(Error::HypothesisViolated(format!("{degree} does not divide {total}")));
        }
        let count = u64::try_from(total / degree as u128).map_err(|_| Error::Overflow("factor count"))?;
        rows.push(CensusRow { degree, multiplicity: 1, count, order: Some(OrderTag::Int(order)) });
    }
    Ok(IterProfile::from_census(n, FactorCensus::new(rows)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Config;
    use crate::field::Field;
    use crate::profile::profile_direct;

    fn nu(r: u64, mut x: u128) -> u32 {
        let mut v = 0;
        while x.is_multiple_of(r as u128) {
            x /= r as u128;
            v += 1;
        }
        v
    }

    #[test]
    fn lte_examples() {
        assert_eq!(lte_valuation(3, 4, 3).unwrap(), 2);
        assert_eq!(lte_valuation(2, 3, 2).unwrap(), 3);
        assert_eq!(lte_valuation(2, 5, 4).unwrap(), 4);
        assert!(matches!(lte_valuation(3, 5, 2), Err(Error::HypothesisViolated(_))));
        for (r, a, n) in [(5u64, 11u64, 10u64), (2, 7, 6), (7, 8, 14), (3, 10, 27)] {
            let direct = nu(r, (a as u128).pow(n as u32) - 1);
            assert_eq!(lte_valuation(r, a, n).unwrap(), direct);
        }
    }

    #[test]
    fn integer_splits() {
        assert_eq!(split_int(2, 2), (1, 2));
        assert_eq!(split_int(3, 2), (2, 1));
        assert_eq!(split_int(6, 12), (1, 12));
        assert_eq!(split_int(10, 12), (3, 4));
    }

    #[test]
    fn order_ratio_examples() {
        let b = order_ratio_bounds(&[2], 3).unwrap();
        assert_eq!(b.effective_base, 9);
        assert_eq!((b.lower, b.upper), (Ratio::new(1, 2), Ratio::from_integer(4)));
        let b = order_ratio_bounds(&[3], 4).unwrap();
        assert_eq!((b.r, b.s, b.lower, b.upper), (3, 1, Ratio::from_integer(2), Ratio::from_integer(2)));
        let b = order_ratio_bounds(&[5], 2).unwrap();
        assert_eq!(b.s, 4);
        for e in 1..=3u32 {
            let m = 5u64.pow(e);
            let ratio = Ratio::new(arith::totient(m) as u128, arith::int_order(2, m).unwrap() as u128);
            assert!(b.lower <= ratio && ratio <= b.upper);
        }
        assert_eq!(order_ratio_bounds(&[3], 6).unwrap_err(), Error::NotCoprime { a: 6, b: 3 });
    }

    #[test]
    fn butler_anchor() {
        let f3 = Field::prime(3).unwrap();
        let f = Poly::parse(&f3, "x+1").unwrap();
        let p1 = butler_profile(&f, 2, 1).unwrap();
        assert_eq!((p1.count, p1.max_deg, p1.min_deg, p1.delta), (1, 2, 2, 2));
        let p2 = butler_profile(&f, 2, 2).unwrap();
        assert_eq!((p2.count, p2.max_deg, p2.min_deg, p2.delta), (2, 2, 2, 4));
        let f7 = Field::prime(7).unwrap();
        let f = Poly::parse(&f7, "x-2").unwrap();
        for n in 0..4 {
            assert_eq!(butler_profile(&f, 2, n).unwrap().min_deg, 1);
        }
    }

    #[test]
    fn butler_matches_direct() {
        let cfg = Config::default();
        for (p, f, d) in [(3u64, "x^2+1", 4u64), (5, "x+2", 3), (5, "x^2+2", 2), (7, "x+3", 6)] {
            let field = Field::prime(p).unwrap();
            let f = Poly::parse(&field, f).unwrap();
            let g = Poly::parse(&field, &format!("x^{d}")).unwrap();
            for n in 0..3 {
                let closed = butler_profile(&f, d, n).unwrap();
                let direct = profile_direct(&f, &g, n, &cfg).unwrap();
                assert!(closed.same_values(&direct), "{f} D={d} n={n}");
            }
        }
    }

    #[test]
    fn butler_guards() {
        let f5 = Field::prime(5).unwrap();
        let x = Poly::x(&f5);
        assert_eq!(butler_profile(&x.scale(&f5.element(3)), 2, 1).unwrap_err(), Error::MonomialF);
        let f = Poly::parse(&f5, "x+1").unwrap();
        assert_eq!(butler_profile(&f, 10, 1).unwrap_err(), Error::PDividesD { p: 5, d: 10 });
        let r = Poly::parse(&f5, "x^2+4").unwrap();
        assert_eq!(butler_profile(&r, 2, 1).unwrap_err(), Error::NotIrreducible);
    }
}
