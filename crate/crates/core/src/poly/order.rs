use super::Poly;
use crate::arith::{self, checked_pow};
use crate::error::{Error, Result};

impl Poly {
    /// The order of `f`: least `e >= 1` with `f | x^e - 1`.
    ///
    /// Starts from the exponent `lcm(q^d_i - 1) * p^ceil(log_p max e_i)` of
    /// the unit group of `F_q[x]/(f)` and descends through its prime divisors.
    pub fn order(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::DivisibleByX);
        }
        if self.coeffs()[0] == 0 {
            return Err(Error::DivisibleByX);
        }
        if self.is_constant() {
            return Ok(1);
        }
        let field = self.field();
        let q = field.order();
        let fac = self.factor()?;
        let mut exponent = 1u64;
        let mut max_mult = 1;
        for (g, e) in &fac.factors {
            let qd = checked_pow(q, g.deg() as u64).ok_or(Error::Overflow("polynomial order"))?;
            exponent = arith::lcm(exponent, qd - 1).ok_or(Error::Overflow("polynomial order"))?;
            max_mult = max_mult.max(*e);
        }
        let p = field.p();
        let ppow = checked_pow(p, arith::ceil_log(p, max_mult) as u64).ok_or(Error::Overflow("polynomial order"))?;
        exponent = exponent.checked_mul(ppow).ok_or(Error::Overflow("polynomial order"))?;
        let f = self.monic();
        let x = Poly::x(field);
        Ok(arith::order_dividing(exponent, |e| x.powmod(e as u128, &f).map(|r| r.is_one()).unwrap_or(false)))
    }
}

#[cfg(test)]
mod tests {
    use crate::error::Error;
    use crate::field::Field;
    use crate::poly::Poly;

    fn naive_order(f: &Poly) -> u64 {
        let x = Poly::x(f.field());
        let mut acc = x.rem(f).unwrap();
        let mut e = 1;
        while !acc.is_one() {
            acc = (&acc * &x).rem(f).unwrap();
            e += 1;
        }
        e
    }

    #[test]
    fn known_orders() {
        let f2 = Field::prime(2).unwrap();
        assert_eq!(Poly::parse(&f2, "x^2+x+1").unwrap().order().unwrap(), 3);
        assert_eq!(Poly::parse(&f2, "x^4+x^3+x^2+x+1").unwrap().order().unwrap(), 5);
        assert_eq!(Poly::parse(&f2, "x^2+x").unwrap().order().unwrap_err(), Error::DivisibleByX);
    }

    #[test]
    fn orders_match_incremental_search() {
        let f3 = Field::prime(3).unwrap();
        for idx in 0..3u64.pow(4) {
            let mut coeffs = vec![];
            let mut v = idx;
            for _ in 0..4 {
                coeffs.push(v % 3);
                v /= 3;
            }
            coeffs.push(1);
            if coeffs[0] == 0 {
                continue;
            }
            let f = Poly::from_coeffs(&f3, &coeffs).unwrap();
            assert_eq!(f.order().unwrap(), naive_order(&f), "{f}");
        }
    }
}
