//! Text form of polynomials and field elements.
//!
//! A polynomial is a sum of terms; a term is a product of integers, powers of
//! `x`, powers of `t` (the generator of an extension field) and parenthesized
//! polynomials in `t`, e.g. `(t+1)*x^2 + t`. Parenthesized expressions in `x`
//! are rejected rather than expanded.

use std::fmt;

use super::Poly;
use crate::arith;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

/// Exponents above this are rejected so a typo cannot allocate gigabytes.
const MAX_EXPONENT: usize = 1 << 24;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: &'a Field,
}

impl<'a> Parser<'a> {
    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// Sum of terms, as `(coefficient, exponent of x)` pairs.
    fn sum(&mut self, allow_x: bool) -> Result<Vec<(u64, usize)>> {
        let mut terms = Vec::new();
        let mut negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let (c, e) = self.term(allow_x)?;
            terms.push((if negate { self.field.neg(c) } else { c }, e));
            negate = match self.peek() {
                Some(b'+') => false,
                Some(b'-') => true,
                _ => break,
            };
            self.pos += 1;
        }
        Ok(terms)
    }

    fn term(&mut self, allow_x: bool) -> Result<(u64, usize)> {
        let f = self.field;
        let (mut coeff, mut exp) = (1u64, 0usize);
        loop {
            match self.peek() {
                Some(b'0'..=b'9') => coeff = f.mul(coeff, self.integer_mod_p()?),
                Some(b'x') => {
                    if !allow_x {
                        return self.error("only polynomials in t may be parenthesized");
                    }
                    self.pos += 1;
                    exp += self.power()?;
                    if exp > MAX_EXPONENT {
                        return self.error("exponent too large");
                    }
                }
                Some(b't') => {
                    if f.is_prime_field() {
                        return self.error("t is only defined in extension fields");
                    }
                    self.pos += 1;
                    let e = self.power()?;
                    coeff = f.mul(coeff, f.pow(f.generator().value(), e as u128));
                }
                Some(b'(') => {
                    if !allow_x {
                        return self.error("nested parentheses are not supported");
                    }
                    self.pos += 1;
                    let inner = self.sum(false)?;
                    if !self.eat(b')') {
                        return self.error("expected ')'");
                    }
                    if self.peek() == Some(b'^') {
                        return self.error("powers of parenthesized expressions are not supported");
                    }
                    let v = inner.iter().fold(0, |acc, &(c, _)| f.add(acc, c));
                    coeff = f.mul(coeff, v);
                }
                Some(c) => return self.error(format!("unexpected character '{}'", c as char)),
                None => return self.error("unexpected end of input"),
            }
            if !self.eat(b'*') {
                return Ok((coeff, exp));
            }
        }
    }

    fn power(&mut self) -> Result<usize> {
        if !self.eat(b'^') {
            return Ok(1);
        }
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected an exponent");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        match text.parse::<usize>() {
            Ok(e) if e <= MAX_EXPONENT => Ok(e),
            _ => self.error("exponent too large"),
        }
    }

    fn integer_mod_p(&mut self) -> Result<u64> {
        let p = self.field.p();
        let mut v = 0u64;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            let d = (self.src[self.pos] - b'0') as u64;
            v = ((v as u128 * 10 + d as u128) % p as u128) as u64;
            self.pos += 1;
        }
        Ok(v)
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.error(format!("unexpected character '{}'", c as char)),
        }
    }
}

impl Poly {
    /// Parses a polynomial in `x`; see the module docs for the grammar.
    pub fn parse(field: &Field, text: &str) -> Result<Poly> {
        let mut parser = Parser { src: text.as_bytes(), pos: 0, field };
        let terms = parser.sum(true)?;
        parser.finish()?;
        let len = terms.iter().map(|&(_, e)| e + 1).max().unwrap_or(0);
        let mut coeffs = vec![0u64; len];
        for (c, e) in terms {
            coeffs[e] = field.add(coeffs[e], c);
        }
        Ok(Poly::from_raw(field, coeffs))
    }
}

/// Parses a field element written as a polynomial in `t`, e.g. `t^2 + 2`.
pub fn parse_element(field: &Field, text: &str) -> Result<FieldElement> {
    let mut parser = Parser { src: text.as_bytes(), pos: 0, field };
    let terms = parser.sum(false)?;
    parser.finish()?;
    Ok(field.element(terms.iter().fold(0, |acc, &(c, _)| field.add(acc, c))))
}

/// Parses `p`, `p^m` or a prime power `q`, with an optional modulus given as a
/// polynomial in `x` over `F_p`.
pub fn parse_field(text: &str, modulus: Option<&str>) -> Result<Field> {
    let bad = |msg: &str| Error::Parse { pos: 0, msg: format!("{msg}: '{text}'") };
    let (p, m) = match text.trim().split_once('^') {
        Some((p, m)) => (
            p.trim().parse::<u64>().map_err(|_| bad("invalid characteristic"))?,
            m.trim().parse::<u32>().map_err(|_| bad("invalid degree"))?,
        ),
        None => {
            let q = text.trim().parse::<u64>().map_err(|_| bad("invalid field size"))?;
            prime_power(q).ok_or_else(|| bad("not a prime power"))?
        }
    };
    let modulus = match modulus {
        None => None,
        Some(src) => {
            let fp = Field::prime(p)?;
            let poly = Poly::parse(&fp, &src.replace('t', "x"))?;
            if poly.deg() != m as usize {
                return Err(Error::DegreeMismatch { expected: m as usize, found: poly.deg() });
            }
            Some(poly.coeffs().to_vec())
        }
    };
    Field::new(p, m, modulus.as_deref())
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    let f = arith::Factored::new(q.max(1));
    match f.powers.as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

fn coefficient_text(field: &Field, c: u64) -> (String, bool) {
    let e = field.element(c);
    let text = e.to_string();
    let single_term = c < field.p() || field.digits(c).iter().filter(|&&d| d != 0).count() == 1;
    (text, single_term)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, &c) in self.coeffs().iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono = match e {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{e}"),
            };
            let coeff = if c == 1 && e > 0 {
                String::new()
            } else {
                let (text, single) = coefficient_text(self.field(), c);
                if single {
                    text
                } else {
                    format!("({text})")
                }
            };
            match (coeff.is_empty(), mono.is_empty()) {
                (false, false) => write!(f, "{coeff}*{mono}")?,
                (true, _) => write!(f, "{mono}")?,
                (false, true) => write!(f, "{coeff}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_prime_field() {
        let f5 = Field::prime(5).unwrap();
        for src in ["x^3 + 4*x + 1", "x", "3", "0", "2*x^10 + x^2"] {
            let p = Poly::parse(&f5, src).unwrap();
            assert_eq!(p.to_string(), src);
        }
        let p = Poly::parse(&f5, " - x^2 + 7*x ").unwrap();
        assert_eq!(p.to_string(), "4*x^2 + 2*x");
        assert_eq!(Poly::parse(&f5, "x*x^2 + x^3").unwrap().to_string(), "2*x^3");
    }

    #[test]
    fn extension_coefficients() {
        let f4 = Field::new(2, 2, None).unwrap();
        let p = Poly::parse(&f4, "(t+1)*x^2 + t").unwrap();
        assert_eq!(p.coeffs(), &[2, 0, 3]);
        assert_eq!(p.to_string(), "(t + 1)*x^2 + t");
        assert_eq!(Poly::parse(&f4, &p.to_string()).unwrap(), p);
        let f9 = Field::new(3, 2, None).unwrap();
        assert_eq!(parse_element(&f9, "t^2").unwrap().value(), 2);
    }

    #[test]
    fn rejects_parenthesized_powers() {
        let f3 = Field::prime(3).unwrap();
        assert!(matches!(Poly::parse(&f3, "2*(x-1)^3"), Err(Error::Parse { .. })));
        assert!(matches!(Poly::parse(&f3, "x^"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(Poly::parse(&f3, "x + t"), Err(Error::Parse { .. })));
        assert!(matches!(Poly::parse(&f3, "x +"), Err(Error::Parse { .. })));
        assert!(matches!(Poly::parse(&f3, "x^99999999999"), Err(Error::Parse { .. })));
        let f4 = Field::new(2, 2, None).unwrap();
        assert!(matches!(Poly::parse(&f4, "(t+1)^2*x"), Err(Error::Parse { .. })));
    }

    #[test]
    fn field_names() {
        assert_eq!(parse_field("3", None).unwrap().order(), 3);
        assert_eq!(parse_field("2^2", None).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(parse_field("9", None).unwrap().degree(), 2);
        assert_eq!(parse_field("3^2", Some("x^2+x+2")).unwrap().modulus(), &[2, 1, 1]);
        assert!(matches!(parse_field("3^2", Some("x^2+1+x^3")), Err(Error::DegreeMismatch { .. })));
        assert!(matches!(parse_field("2^2", Some("x^2+1")), Err(Error::ReducibleModulus(2))));
        assert!(parse_field("6", None).is_err());
    }
}
