//! Dense univariate polynomials over a [`Field`].

mod factor;
pub(crate) mod kernel;
mod order;
mod parse;

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

pub use factor::Factorization;
pub(crate) use factor::{canonical_cmp, ddf, pth_root, sort_canonical, squarefree_decomposition};
pub use parse::{parse_element, parse_field};

/// A polynomial with coefficients stored lowest degree first and no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<u64>,
}

impl Poly {
    pub(crate) fn from_raw(field: &Field, mut coeffs: Vec<u64>) -> Poly {
        kernel::trim(&mut coeffs);
        Poly { field: field.clone(), coeffs }
    }

    /// Builds a polynomial from packed coefficients, lowest degree first.
    pub fn from_coeffs(field: &Field, coeffs: &[u64]) -> Result<Poly> {
        if let Some(&bad) = coeffs.iter().find(|&&c| c >= field.order()) {
            return Err(Error::Parse { pos: 0, msg: format!("{bad} is not an element of {field}") });
        }
        Ok(Poly::from_raw(field, coeffs.to_vec()))
    }

    /// Builds a polynomial from integer coefficients reduced modulo `p`.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::from_raw(field, coeffs.iter().map(|&c| field.reduce_int(c)).collect())
    }

    pub fn from_elements(field: &Field, coeffs: &[FieldElement]) -> Poly {
        assert!(coeffs.iter().all(|c| c.field().same(field)));
        Poly::from_raw(field, coeffs.iter().map(|c| c.value()).collect())
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::from_raw(field, vec![1])
    }

    pub fn x(field: &Field) -> Poly {
        Poly::from_raw(field, vec![0, 1])
    }

    pub fn constant(c: &FieldElement) -> Poly {
        Poly::from_raw(c.field(), vec![c.value()])
    }

    /// `c * x^e`.
    pub fn monomial(c: &FieldElement, e: usize) -> Poly {
        let mut coeffs = vec![0; e + 1];
        coeffs[e] = c.value();
        Poly::from_raw(c.field(), coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Packed coefficients, lowest degree first.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.field.element(self.coeffs.get(i).copied().unwrap_or(0))
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub(crate) fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn leading(&self) -> Option<FieldElement> {
        self.coeffs.last().map(|&c| self.field.element(c))
    }

    /// The monic associate; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.coeffs.last() {
            None | Some(1) => self.clone(),
            Some(&lc) => {
                let inv = self.field.inv(lc).unwrap();
                self.scale_raw(inv)
            }
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Poly {
        assert!(c.field().same(&self.field));
        self.scale_raw(c.value())
    }

    fn scale_raw(&self, c: u64) -> Poly {
        let f = &self.field;
        Poly::from_raw(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    fn check_field(&self, other: &Poly) -> Result<()> {
        if self.field.same(&other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        Ok(Poly::from_raw(&self.field, kernel::add(&self.field, &self.coeffs, &other.coeffs)))
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        Ok(Poly::from_raw(&self.field, kernel::sub(&self.field, &self.coeffs, &other.coeffs)))
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        Ok(Poly::from_raw(&self.field, kernel::mul(&self.field, &self.coeffs, &other.coeffs)))
    }

    pub fn divmod(&self, d: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(d)?;
        if d.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        let (q, r) = kernel::divmod(&self.field, &self.coeffs, &d.coeffs, true);
        Ok((Poly::from_raw(&self.field, q), Poly::from_raw(&self.field, r)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        self.check_field(d)?;
        if d.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        Ok(Poly::from_raw(&self.field, kernel::rem(&self.field, &self.coeffs, &d.coeffs)))
    }

    /// Exact quotient; panics when `d` does not divide `self`.
    pub(crate) fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.divmod(d).expect("nonzero divisor");
        assert!(r.is_zero(), "inexact division");
        q
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = Poly::from_raw(&a.field, kernel::rem(&a.field, &a.coeffs, &b.coeffs));
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| f.scale(i as u64 % f.p(), c)).collect();
        Poly::from_raw(f, coeffs)
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &Poly) -> Result<Poly> {
        self.check_field(g)?;
        let mut acc = Poly::zero(&self.field);
        for &c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Poly::from_raw(&self.field, vec![c]);
        }
        Ok(acc)
    }

    /// The `n`-fold iterate `g^(n)`, with `g^(0) = x`. Fails with
    /// `DegreeOverflow` before allocating anything above `cap`.
    pub fn iterate(&self, n: u32, cap: usize) -> Result<Poly> {
        if n == 0 {
            return Ok(Poly::x(&self.field));
        }
        let d = self.deg() as u128;
        let degree = if d <= 1 { d } else { d.checked_pow(n).unwrap_or(u128::MAX) };
        if degree > cap as u128 {
            return Err(Error::DegreeOverflow { degree, cap });
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self^e mod m`.
    pub fn powmod(&self, e: u128, m: &Poly) -> Result<Poly> {
        let mut base = self.rem(m)?;
        let mut acc = Poly::one(&self.field).rem(m)?;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m)?;
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).rem(m)?;
            }
        }
        Ok(acc)
    }

    /// Evaluates at `a`, which may live in an extension of the coefficient
    /// field reachable through [`Field::extend`].
    pub fn eval(&self, a: &FieldElement) -> Result<FieldElement> {
        let target = a.field();
        let coeffs = if target.same(&self.field) {
            self.coeffs.clone()
        } else {
            let emb = target.embedding_from(&self.field)?;
            self.coeffs.iter().map(|&c| emb.map_raw(c)).collect()
        };
        let v = coeffs.iter().rev().fold(0, |acc, &c| target.add(target.mul(acc, a.value()), c));
        Ok(target.element(v))
    }

    /// Applies `a -> a^(p^i)` to every coefficient.
    pub fn frobenius_poly(&self, i: i64) -> Poly {
        let f = &self.field;
        Poly::from_raw(f, self.coeffs.iter().map(|&c| f.frob(c, i)).collect())
    }

    /// Maps the coefficients into an extension field.
    pub fn embed_into(&self, target: &Field) -> Result<Poly> {
        if target.same(&self.field) {
            return Ok(self.clone());
        }
        let emb = target.embedding_from(&self.field)?;
        Ok(Poly::from_raw(target, self.coeffs.iter().map(|&c| emb.map_raw(c)).collect()))
    }

    /// Pulls the coefficients back into a subfield; fails with
    /// `FieldMismatch` when some coefficient lies outside it.
    pub fn project_to(&self, sub: &Field) -> Result<Poly> {
        if sub.same(&self.field) {
            return Ok(self.clone());
        }
        let emb = self.field.embedding_from(sub)?;
        let coeffs =
            self.coeffs.iter().map(|&c| emb.project_raw(c).ok_or(Error::FieldMismatch)).collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_raw(sub, coeffs))
    }
}

/// Monic polynomials of exactly this degree are enumerated only up to this
/// many candidates.
const MAX_ENUMERATION: u64 = 1 << 20;

impl Poly {
    /// All monic polynomials of the given degree, in canonical order.
    pub fn monic_of_degree(field: &Field, degree: usize) -> Result<Vec<Poly>> {
        let q = field.order();
        let total = u32::try_from(degree)
            .ok()
            .and_then(|d| q.checked_pow(d))
            .filter(|&t| t <= MAX_ENUMERATION)
            .ok_or(Error::Overflow("monic polynomial enumeration"))?;
        let mut out: Vec<Poly> = (0..total)
            .map(|mut v| {
                let mut coeffs = Vec::with_capacity(degree + 1);
                for _ in 0..degree {
                    coeffs.push(v % q);
                    v /= q;
                }
                coeffs.push(1);
                Poly::from_raw(field, coeffs)
            })
            .collect();
        out.sort_by(canonical_cmp);
        Ok(out)
    }

    /// All monic irreducible polynomials of the given degree, in canonical order.
    pub fn monic_irreducibles(field: &Field, degree: usize) -> Result<Vec<Poly>> {
        let mut out = Vec::new();
        for p in Poly::monic_of_degree(field, degree)? {
            if p.is_irreducible()? {
                out.push(p);
            }
        }
        Ok(out)
    }
}

macro_rules! poly_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &Poly {
            type Output = Poly;
            /// Panics when the operands live in different fields.
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).expect("polynomials over different fields")
            }
        }
        impl $trait for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

poly_op!(Add, add, try_add);
poly_op!(Sub, sub, try_sub);
poly_op!(Mul, mul, try_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::from_raw(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self} over {}", self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn irreducible_counts() {
        // Gauss's formula: (1/n) sum_{d | n} mu(d) q^(n/d).
        assert_eq!(Poly::monic_irreducibles(&f(2), 4).unwrap().len(), 3);
        assert_eq!(Poly::monic_irreducibles(&f(3), 2).unwrap().len(), 3);
        assert_eq!(Poly::monic_irreducibles(&f(5), 1).unwrap().len(), 5);
        let f4 = Field::new(2, 2, None).unwrap();
        assert_eq!(Poly::monic_irreducibles(&f4, 2).unwrap().len(), 6);
        assert_eq!(Poly::monic_of_degree(&f(3), 0).unwrap(), vec![Poly::one(&f(3))]);
    }

    fn parse(field: &Field, s: &str) -> Poly {
        Poly::parse(field, s).unwrap()
    }

    #[test]
    fn iterate_matches_repeated_composition() {
        let f3 = f(3);
        let g = parse(&f3, "x^2+1");
        assert_eq!(g.iterate(2, 100).unwrap(), parse(&f3, "x^4+2*x^2+2"));
        assert_eq!(g.iterate(0, 100).unwrap(), Poly::x(&f3));
        assert!(matches!(g.iterate(10, 1000), Err(Error::DegreeOverflow { degree: 1024, cap: 1000 })));
    }

    #[test]
    fn divmod_and_gcd() {
        let f5 = f(5);
        let a = parse(&f5, "x^5 + 3*x^2 + 1");
        let b = parse(&f5, "2*x^2 + x");
        let (q, r) = a.divmod(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert_eq!(a.divmod(&Poly::zero(&f5)).unwrap_err(), Error::DivisionByZeroPoly);
        let g = parse(&f5, "x+1");
        let h = parse(&f5, "x+2");
        assert_eq!((&g * &h).gcd(&(&g * &g)).unwrap(), g);
        assert_eq!(Poly::zero(&f5).gcd(&Poly::zero(&f5)).unwrap(), Poly::zero(&f5));
        assert_eq!(a.try_add(&Poly::one(&f(7))).unwrap_err(), Error::FieldMismatch);
    }

    #[test]
    fn derivative_in_characteristic_p() {
        let f3 = f(3);
        assert!(parse(&f3, "x^3 + x^6 + 2").derivative().is_zero());
        assert_eq!(parse(&f3, "x^4 + x^2").derivative(), parse(&f3, "x^3 + 2*x"));
    }

    #[test]
    fn eval_in_extension() {
        let f2 = f(2);
        let f4 = Field::new(2, 2, None).unwrap();
        let g = parse(&f2, "x^2 + x + 1");
        for a in f4.elements() {
            let v = g.eval(&a).unwrap();
            assert_eq!(v.is_zero(), a.value() >= 2);
        }
    }
}
