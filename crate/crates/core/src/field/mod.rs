//! Finite fields `F_{p^m}` with elements packed as base-`p` digit strings.
//!
//! An element `c_0 + c_1 t + ... + c_{m-1} t^{m-1}` of `F_p[t]/(modulus)` is
//! stored as the integer `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`. That integer
//! also fixes the canonical order on elements. Elements of the prime subfield
//! are therefore represented identically in every extension.

mod embed;

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith::{self, Factored};
use crate::error::{Error, Result};
use crate::poly::Poly;

pub use embed::Embedding;

/// Extension fields up to this order get log/antilog tables.
const TABLE_LIMIT: u64 = 1 << 18;

/// A finite field `F_p[t]/(modulus)`, cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

struct FieldData {
    p: u64,
    degree: u32,
    order: u64,
    /// Monic modulus over `F_p`, lowest coefficient first.
    modulus: Vec<u64>,
    tables: Option<Arc<Tables>>,
    /// Set when the field was built by [`Field::extend`].
    parent: Option<Parent>,
}

struct Tables {
    /// `exp[i] = g^i` for `i < 2(q-1)`, so sums of two logs index directly.
    exp: Vec<u64>,
    log: Vec<u32>,
}

struct Parent {
    base: Field,
    /// Images of `t^i` of the base field.
    images: Vec<u64>,
}

type Cache<K> = OnceLock<Mutex<HashMap<K, Field>>>;

static PLAIN_FIELDS: Cache<(u64, Vec<u64>)> = OnceLock::new();
static EXTENSIONS: Cache<(u64, Vec<u64>, u32)> = OnceLock::new();
type ModulusCache = OnceLock<Mutex<HashMap<(u64, u32), Vec<u64>>>>;

static DEFAULT_MODULI: ModulusCache = OnceLock::new();

fn cached<K: Eq + Hash + Clone>(
    cache: &'static Cache<K>,
    key: K,
    build: impl FnOnce() -> Result<Field>,
) -> Result<Field> {
    let map = cache.get_or_init(Default::default);
    if let Some(f) = map.lock().unwrap().get(&key) {
        return Ok(f.clone());
    }
    let field = build()?;
    map.lock().unwrap().entry(key).or_insert(field.clone());
    Ok(field)
}

impl Field {
    /// The prime field `F_p`, whose modulus is `x`.
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// `F_{p^m}` with the given monic modulus over `F_p` (lowest coefficient
    /// first), or the default modulus when `None`.
    ///
    /// The default is the lexicographically smallest monic irreducible of
    /// degree `m`, comparing coefficient tuples `(a_0, a_1, ...)`.
    pub fn new(p: u64, m: u32, modulus: Option<&[u64]>) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 || p >= 1 << 63 {
            return Err(Error::FieldTooLarge { p, degree: m });
        }
        let order =
            arith::checked_pow(p, m as u64).filter(|&q| q < 1 << 63).ok_or(Error::FieldTooLarge { p, degree: m })?;
        let modulus = match modulus {
            Some(c) => {
                if c.len() != m as usize + 1 {
                    return Err(Error::DegreeMismatch { expected: m as usize, found: c.len().saturating_sub(1) });
                }
                if c[m as usize] != 1 || c.iter().any(|&a| a >= p) {
                    return Err(Error::ReducibleModulus(p));
                }
                if m > 1 && !modulus_is_irreducible(p, c)? {
                    return Err(Error::ReducibleModulus(p));
                }
                c.to_vec()
            }
            None => default_modulus(p, m)?,
        };
        if m == 1 && modulus[0] != 0 {
            // Any linear modulus defines the same prime field.
            return Self::new(p, 1, None);
        }
        cached(&PLAIN_FIELDS, (p, modulus.clone()), || Ok(Self::build(p, m, order, modulus, None)))
    }

    fn build(p: u64, degree: u32, order: u64, modulus: Vec<u64>, parent: Option<Parent>) -> Self {
        let mut field = Field(Arc::new(FieldData { p, degree, order, modulus, tables: None, parent }));
        if degree > 1 && order <= TABLE_LIMIT {
            let tables = Arc::new(field.build_tables());
            Arc::get_mut(&mut field.0).unwrap().tables = Some(tables);
        }
        field
    }

    fn build_tables(&self) -> Tables {
        let q = self.order();
        let group = Factored::new(q - 1);
        let is_primitive = |g: u64| group.primes().all(|r| self.pow_slow(g, (q - 1) / r) != 1);
        let g =
            std::iter::once(self.p()).chain(2..q).find(|&g| is_primitive(g)).expect("multiplicative group is cyclic");
        let n = (q - 1) as usize;
        let mut exp = vec![0u64; 2 * n];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u64;
        for i in 0..n {
            exp[i] = x;
            exp[i + n] = x;
            log[x as usize] = i as u32;
            x = self.mul_slow(x, g);
        }
        Tables { exp, log }
    }

    /// The field `F_{Q^s}` with its embedding of `self = F_Q`.
    ///
    /// The generator of `self` maps to the smallest root (in packed order)
    /// of its modulus. `s = 1` returns `self`.
    pub fn extend(&self, s: u32) -> Result<Field> {
        if s == 0 {
            return Err(Error::DegreeTooSmall("extension degree 0".into()));
        }
        if s == 1 {
            return Ok(self.clone());
        }
        let total = self.degree().checked_mul(s).ok_or(Error::FieldTooLarge { p: self.p(), degree: u32::MAX })?;
        cached(&EXTENSIONS, (self.p(), self.modulus().to_vec(), s), || {
            let plain = Field::new(self.p(), total, None)?;
            let images = if self.degree() == 1 {
                vec![1]
            } else {
                let lifted = Poly::from_raw(&plain, self.modulus().to_vec());
                let root = lifted.roots()?.into_iter().next().ok_or(Error::FieldMismatch)?;
                let mut images = Vec::with_capacity(self.degree() as usize);
                let mut x = 1;
                for _ in 0..self.degree() {
                    images.push(x);
                    x = plain.mul(x, root.value());
                }
                images
            };
            let data = &plain.0;
            Ok(Field(Arc::new(FieldData {
                p: data.p,
                degree: data.degree,
                order: data.order,
                modulus: data.modulus.clone(),
                tables: data.tables.clone(),
                parent: Some(Parent { base: self.clone(), images }),
            })))
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub(crate) fn p(&self) -> u64 {
        self.0.p
    }

    /// Absolute degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    /// Number of elements.
    pub fn order(&self) -> u64 {
        self.0.order
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.degree == 1
    }

    /// The field this one was built from by [`Field::extend`].
    pub fn base(&self) -> Option<&Field> {
        self.0.parent.as_ref().map(|p| &p.base)
    }

    pub fn element(&self, value: u64) -> FieldElement {
        assert!(value < self.order(), "{value} is not an element of {self}");
        FieldElement { field: self.clone(), value }
    }

    pub fn zero(&self) -> FieldElement {
        self.element(0)
    }

    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    /// The class of `t`, or `0` in a prime field (whose modulus is `x`).
    pub fn generator(&self) -> FieldElement {
        if self.is_prime_field() {
            self.zero()
        } else {
            self.element(self.p())
        }
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.element(self.reduce_int(n))
    }

    pub(crate) fn reduce_int(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.p() as i128) as u64
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(move |v| self.element(v))
    }

    // Packed arithmetic. Callers guarantee operands are valid elements.

    #[inline]
    pub(crate) fn add(&self, a: u64, b: u64) -> u64 {
        let d = &*self.0;
        if d.degree == 1 {
            let s = a + b;
            if s >= d.p {
                s - d.p
            } else {
                s
            }
        } else if d.p == 2 {
            a ^ b
        } else {
            self.digitwise(a, b, |x, y| (x + y) % d.p)
        }
    }

    #[inline]
    pub(crate) fn sub(&self, a: u64, b: u64) -> u64 {
        let d = &*self.0;
        if d.degree == 1 {
            if a >= b {
                a - b
            } else {
                a + d.p - b
            }
        } else if d.p == 2 {
            a ^ b
        } else {
            self.digitwise(a, b, |x, y| (x + d.p - y) % d.p)
        }
    }

    #[inline]
    pub(crate) fn neg(&self, a: u64) -> u64 {
        self.sub(0, a)
    }

    fn digitwise(&self, mut a: u64, mut b: u64, op: impl Fn(u64, u64) -> u64) -> u64 {
        let p = self.p();
        let (mut out, mut place) = (0u64, 1u64);
        while a > 0 || b > 0 {
            out += op(a % p, b % p) * place;
            a /= p;
            b /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    #[inline]
    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        let d = &*self.0;
        if d.degree == 1 {
            arith::mul_mod(a, b, d.p)
        } else if let Some(t) = &d.tables {
            if a == 0 || b == 0 {
                0
            } else {
                t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
            }
        } else {
            self.mul_slow(a, b)
        }
    }

    /// Multiplication by a prime-field scalar `c < p`.
    #[inline]
    pub(crate) fn scale(&self, c: u64, a: u64) -> u64 {
        if self.is_prime_field() || self.0.tables.is_some() {
            return self.mul(c, a);
        }
        let p = self.p();
        self.digitwise(a, 0, |x, _| x * c % p)
    }

    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        let p = self.p();
        let m = self.degree() as usize;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + arith::mul_mod(x, y, p)) % p;
            }
        }
        let modulus = self.modulus();
        for i in (m..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for j in 0..m {
                let t = arith::mul_mod(c, modulus[j], p);
                prod[i - m + j] = (prod[i - m + j] + p - t) % p;
            }
        }
        self.pack_digits(&prod[..m])
    }

    pub(crate) fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let d = &*self.0;
        Some(if d.degree == 1 {
            inv_mod_prime(a, d.p)
        } else if let Some(t) = &d.tables {
            let n = (d.order - 1) as usize;
            t.exp[(n - t.log[a as usize] as usize) % n]
        } else {
            self.pow_slow(a, d.order - 2)
        })
    }

    /// `a^e`, with `0^0 = 1`.
    pub(crate) fn pow(&self, a: u64, e: u128) -> u64 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = self.order() - 1;
        let e = (e % n as u128) as u64;
        if let Some(t) = &self.0.tables {
            let l = (t.log[a as usize] as u128 * e as u128 % n as u128) as usize;
            return t.exp[l];
        }
        if self.is_prime_field() {
            return arith::pow_mod(a, e, self.p());
        }
        self.pow_slow(a, e)
    }

    fn pow_slow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^(p^i)` for `i` taken modulo the absolute degree.
    pub(crate) fn frob(&self, a: u64, i: i64) -> u64 {
        let i = i.rem_euclid(self.degree() as i64) as u64;
        if i == 0 || a <= 1 || self.is_prime_field() {
            return a;
        }
        let pi = self.p().pow(i as u32);
        if let Some(t) = &self.0.tables {
            let n = self.order() - 1;
            let l = (t.log[a as usize] as u128 * pi as u128 % n as u128) as usize;
            return t.exp[l];
        }
        self.pow_slow(a, pi)
    }

    /// Base-`p` digits of a packed element, always `degree` of them.
    pub(crate) fn digits(&self, mut a: u64) -> Vec<u64> {
        let p = self.p();
        (0..self.degree())
            .map(|_| {
                let d = a % p;
                a /= p;
                d
            })
            .collect()
    }

    pub(crate) fn pack_digits(&self, digits: &[u64]) -> u64 {
        let p = self.p();
        digits.iter().rev().fold(0, |acc, &d| acc * p + d)
    }

    /// The embedding of `sub` into `self`, found by following the chain of
    /// fields built with [`Field::extend`]. Prime fields embed everywhere.
    pub fn embedding_from(&self, sub: &Field) -> Result<Embedding> {
        Embedding::between(sub, self)
    }

    fn parent_images(&self) -> Option<(&Field, &[u64])> {
        self.0.parent.as_ref().map(|p| (&p.base, p.images.as_slice()))
    }

    pub(crate) fn same(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self == other
    }
}

fn inv_mod_prime(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    s0.rem_euclid(p as i128) as u64
}

fn modulus_is_irreducible(p: u64, coeffs: &[u64]) -> Result<bool> {
    let fp = Field::prime(p)?;
    Poly::from_raw(&fp, coeffs.to_vec()).is_irreducible()
}

fn default_modulus(p: u64, m: u32) -> Result<Vec<u64>> {
    if m == 1 {
        return Ok(vec![0, 1]);
    }
    let map = DEFAULT_MODULI.get_or_init(Default::default);
    if let Some(c) = map.lock().unwrap().get(&(p, m)) {
        return Ok(c.clone());
    }
    // Enumerate (a_0, ..., a_{m-1}) lexicographically with a_0 most
    // significant. Every candidate with a_0 = 0 is divisible by x.
    let mut tuple = vec![0u64; m as usize];
    tuple[0] = 1;
    let found = loop {
        let mut coeffs = tuple.clone();
        coeffs.push(1);
        if modulus_is_irreducible(p, &coeffs)? {
            break coeffs;
        }
        let mut i = m as usize - 1;
        loop {
            tuple[i] += 1;
            if tuple[i] < p {
                break;
            }
            tuple[i] = 0;
            i -= 1;
        }
    };
    map.lock().unwrap().insert((p, m), found.clone());
    Ok(found)
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 1 {
            write!(f, "F_{}", self.p())
        } else {
            write!(f, "F_{}^{}", self.p(), self.degree())
        }
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}[{:?}]", self.modulus())
    }
}

/// An element of a [`Field`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Field,
    value: u64,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// The packed base-`p` representation, which is also the canonical order.
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_one(&self) -> bool {
        self.value == 1
    }

    pub fn inv(&self) -> Result<FieldElement> {
        let v = self.field.inv(self.value).ok_or(Error::ZeroElement)?;
        Ok(self.with(v))
    }

    pub fn pow(&self, e: u128) -> FieldElement {
        self.with(self.field.pow(self.value, e))
    }

    /// `a^(p^i)`; negative `i` is reduced modulo the absolute degree.
    pub fn frobenius(&self, i: i64) -> FieldElement {
        self.with(self.field.frob(self.value, i))
    }

    /// Least `s >= 1` with `a^(Q^s) = a`, where `Q = |base|`.
    ///
    /// Only the size of `base` matters, so any field whose degree divides
    /// that of the ambient field is accepted.
    pub fn degree_over(&self, base: &Field) -> Result<u32> {
        let k = base.degree();
        if base.p() != self.field.p() || !self.field.degree().is_multiple_of(k) {
            return Err(Error::FieldMismatch);
        }
        let rel = self.field.degree() / k;
        for s in Factored::new(rel as u64).divisors() {
            if self.frobenius(k as i64 * s as i64) == *self {
                return Ok(s as u32);
            }
        }
        unreachable!("a^(Q^rel) = a for every element")
    }

    /// The minimal polynomial over `base`, as a monic polynomial over `base`.
    pub fn minimal_polynomial(&self, base: &Field) -> Result<Poly> {
        let s = self.degree_over(base)?;
        let k = base.degree() as i64;
        let ambient = &self.field;
        let mut poly = Poly::one(ambient);
        for j in 0..s as i64 {
            let conj = self.frobenius(k * j);
            poly = &poly * &Poly::from_raw(ambient, vec![ambient.neg(conj.value), 1]);
        }
        poly.project_to(base)
    }

    /// Multiplicative order, found by descending through the prime divisors
    /// of `|F|-1`.
    pub fn mult_order(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let f = &self.field;
        Ok(arith::order_dividing(f.order() - 1, |e| f.pow(self.value, e as u128) == 1))
    }

    fn with(&self, value: u64) -> FieldElement {
        FieldElement { field: self.field.clone(), value }
    }

    fn check(&self, other: &FieldElement) {
        assert!(self.field.same(&other.field), "elements of {} and {} mixed", self.field, other.field);
    }
}

macro_rules! element_op {
    ($trait:ident, $method:ident, $raw:ident) => {
        impl $trait for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.check(rhs);
                self.with(self.field.$raw(self.value, rhs.value))
            }
        }
        impl $trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

element_op!(Add, add, add);
element_op!(Sub, sub, sub);
element_op!(Mul, mul, mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.with(self.field.neg(self.value))
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl fmt::Display for FieldElement {
    /// Prime-subfield elements print as integers, others as polynomials in `t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.value < self.field.p() {
            return write!(f, "{}", self.value);
        }
        let digits = self.field.digits(self.value);
        let mut first = true;
        for (i, &c) in digits.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (c, i) {
                (c, 0) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (c, 1) => write!(f, "{c}*t")?,
                (1, i) => write!(f, "t^{i}")?,
                (c, i) => write!(f, "{c}*t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_moduli() {
        assert_eq!(Field::prime(3).unwrap().modulus(), &[0, 1]);
        assert_eq!(Field::new(2, 2, None).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(Field::new(3, 2, None).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(Field::new(2, 3, None).unwrap().modulus(), &[1, 0, 1, 1]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::prime(4).unwrap_err(), Error::NotPrime(4));
        assert_eq!(Field::new(2, 2, Some(&[1, 0, 1])).unwrap_err(), Error::ReducibleModulus(2));
        assert!(matches!(Field::new(2, 3, Some(&[1, 1, 1])), Err(Error::DegreeMismatch { .. })));
        assert!(matches!(Field::new(2, 64, None), Err(Error::FieldTooLarge { .. })));
    }

    #[test]
    fn f4_frobenius_swaps_roots() {
        let f4 = Field::new(2, 2, None).unwrap();
        let lam = f4.generator();
        assert_eq!(lam.frobenius(1), &lam + &f4.one());
        assert_eq!(lam.frobenius(-1), lam.frobenius(1));
        assert_eq!(lam.frobenius(2), lam);
    }

    #[test]
    fn minimal_polynomial_of_i() {
        let f9 = Field::new(3, 2, None).unwrap();
        let i = f9.generator();
        assert_eq!((&i * &i).value(), 2);
        let f3 = Field::prime(3).unwrap();
        let mp = i.minimal_polynomial(&f3).unwrap();
        assert_eq!(mp.to_string(), "x^2 + 1");
        assert_eq!(f9.one().minimal_polynomial(&f3).unwrap().to_string(), "x + 2");
    }

    #[test]
    fn orders() {
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.element(2).mult_order().unwrap(), 3);
        assert_eq!(f7.zero().mult_order().unwrap_err(), Error::ZeroElement);
        let f16 = Field::new(2, 4, None).unwrap();
        let orders: Vec<u64> = (1..16).map(|v| f16.element(v).mult_order().unwrap()).collect();
        for (v, &o) in (1..16u64).zip(&orders) {
            let a = f16.element(v);
            assert!(a.pow(o as u128).is_one());
            assert_eq!(15 % o, 0);
        }
        assert_eq!(orders.iter().filter(|&&o| o == 15).count(), 8);
    }

    #[test]
    fn table_and_slow_paths_agree() {
        let f = Field::new(3, 4, None).unwrap();
        for a in (0..81).step_by(7) {
            for b in 0..81 {
                assert_eq!(f.mul(a, b), f.mul_slow(a, b));
            }
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
    }

    #[test]
    fn large_field_without_tables() {
        let f = Field::new(2, 40, None).unwrap();
        let a = f.element(123456789);
        let inv = a.inv().unwrap();
        assert!((&a * &inv).is_one());
        assert_eq!(a.frobenius(40), a);
        assert_eq!(40 % a.degree_over(&Field::prime(2).unwrap()).unwrap(), 0);
    }

    #[test]
    fn extension_embeds_base() {
        let f4 = Field::new(2, 2, None).unwrap();
        let f16 = f4.extend(2).unwrap();
        let emb = f16.embedding_from(&f4).unwrap();
        for a in f4.elements() {
            for b in f4.elements() {
                let lhs = emb.map(&(&a * &b));
                let rhs = &emb.map(&a) * &emb.map(&b);
                assert_eq!(lhs, rhs);
                assert_eq!(emb.map(&(&a + &b)), &emb.map(&a) + &emb.map(&b));
            }
            assert_eq!(emb.project(&emb.map(&a)), Some(a.clone()));
        }
        let outside = f16.elements().filter(|x| emb.project(x).is_none()).count();
        assert_eq!(outside, 12);
        assert!(f4.extend(1).unwrap() == f4);
    }

    #[test]
    fn element_degrees() {
        let f2 = Field::prime(2).unwrap();
        let f64 = Field::new(2, 6, None).unwrap();
        let mut counts = HashMap::new();
        for a in f64.elements() {
            *counts.entry(a.degree_over(&f2).unwrap()).or_insert(0) += 1;
        }
        assert_eq!(counts[&1], 2);
        assert_eq!(counts[&2], 2);
        assert_eq!(counts[&3], 6);
        assert_eq!(counts[&6], 54);
    }
}
