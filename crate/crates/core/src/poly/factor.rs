//! Squarefree decomposition, distinct-degree and equal-degree factorization.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{kernel, Poly};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::field::FieldElement;

/// Matrix Frobenius is used up to this modulus degree.
const MATRIX_MAX_DEGREE: usize = 2048;

/// `unit * prod(factor^multiplicity)` with monic irreducible factors in
/// canonical order: by degree, then by coefficient tuple from the constant
/// term upward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElement,
    pub factors: Vec<(Poly, u64)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn expand(&self) -> Poly {
        let mut acc = Poly::constant(&self.unit);
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e);
        }
        acc
    }

    /// Number of distinct irreducible factors.
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

pub(crate) fn canonical_cmp(a: &Poly, b: &Poly) -> Ordering {
    a.deg().cmp(&b.deg()).then_with(|| a.coeffs().cmp(b.coeffs()))
}

pub(crate) fn sort_canonical(v: &mut [(Poly, u64)]) {
    v.sort_by(|(a, ea), (b, eb)| canonical_cmp(a, b).then(ea.cmp(eb)));
}

/// `a -> a^q mod m` for the fixed modulus `m`, where `q` is the size of the
/// coefficient field.
pub(crate) struct FrobeniusMap {
    modulus: Poly,
    /// Row `j` holds `x^(q j) mod m`, padded to `deg m` entries.
    rows: Option<Vec<u64>>,
}

impl FrobeniusMap {
    /// `modulus` must be monic of positive degree.
    pub(crate) fn new(modulus: &Poly) -> Self {
        let n = modulus.deg();
        let q = modulus.field().order();
        let rows = ((2..=MATRIX_MAX_DEGREE).contains(&n) && (q <= 64 || n <= 256)).then(|| frobenius_rows(modulus));
        FrobeniusMap { modulus: modulus.clone(), rows }
    }

    pub(crate) fn modulus(&self) -> &Poly {
        &self.modulus
    }

    /// `a^q mod m`; `a` must already be reduced.
    pub(crate) fn apply(&self, a: &Poly) -> Poly {
        let f = self.modulus.field();
        match &self.rows {
            Some(rows) => Poly::from_raw(f, kernel::combine_rows(f, a.coeffs(), rows, self.modulus.deg())),
            None => a.powmod(f.order() as u128, &self.modulus).unwrap(),
        }
    }
}

fn frobenius_rows(m: &Poly) -> Vec<u64> {
    let f = m.field();
    let n = m.deg();
    let q = f.order();
    let mut rows = vec![0u64; n * n];
    let mc = m.coeffs();
    if q <= 64 {
        // Walk x^0, x^1, ... by multiply-by-x steps, keeping every q-th one.
        let mut cur = vec![0u64; n];
        cur[0] = 1;
        rows[..n].copy_from_slice(&cur);
        for j in 1..n {
            for _ in 0..q {
                let top = cur[n - 1];
                cur.copy_within(0..n - 1, 1);
                cur[0] = 0;
                if top != 0 {
                    for (c, &mi) in cur.iter_mut().zip(&mc[..n]) {
                        *c = f.sub(*c, f.mul(top, mi));
                    }
                }
            }
            rows[j * n..(j + 1) * n].copy_from_slice(&cur);
        }
    } else {
        let xq = Poly::x(f).powmod(q as u128, m).unwrap();
        let mut cur = Poly::one(f);
        for j in 0..n {
            rows[j * n..j * n + cur.coeffs().len()].copy_from_slice(cur.coeffs());
            cur = (&cur * &xq).rem(m).unwrap();
        }
    }
    rows
}

/// Squarefree decomposition of a monic nonconstant `f`: pairwise coprime
/// squarefree monic parts with distinct multiplicities.
pub(crate) fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, u64)> {
    let mut out = Vec::new();
    let mut scale = 1u64;
    let mut f = f.clone();
    loop {
        let c0 = f.gcd(&f.derivative()).unwrap();
        let mut w = f.div_exact(&c0);
        let mut c = c0;
        let mut i = 1u64;
        while !w.is_one() {
            let y = w.gcd(&c).unwrap();
            let z = w.div_exact(&y);
            if !z.is_one() {
                out.push((z, i * scale));
            }
            i += 1;
            c = c.div_exact(&y);
            w = y;
        }
        if c.is_one() {
            break;
        }
        f = pth_root(&c);
        scale *= f.field().p();
    }
    out.sort_by_key(|(_, e)| *e);
    out
}

/// The `p`-th root of a polynomial whose exponents are all multiples of `p`.
pub(crate) fn pth_root(f: &Poly) -> Poly {
    let field = f.field();
    let p = field.p() as usize;
    let coeffs = f.coeffs().iter().step_by(p).map(|&c| field.frob(c, -1)).collect();
    Poly::from_raw(field, coeffs)
}

/// Distinct-degree factorization of a monic squarefree nonconstant `f`:
/// `(d, product of all irreducible factors of degree d)` in increasing `d`.
pub(crate) fn ddf(f: &Poly) -> Vec<(usize, Poly)> {
    let field = f.field();
    let x = Poly::x(field);
    let mut out = Vec::new();
    let mut h = f.clone();
    let mut frob = FrobeniusMap::new(&h);
    let mut xq = x.rem(&h).unwrap();
    let mut d = 0;
    while h.deg() >= 2 * (d + 1) {
        d += 1;
        xq = frob.apply(&xq);
        let g = h.gcd(&(&xq - &x)).unwrap();
        if !g.is_one() {
            h = h.div_exact(&g);
            out.push((d, g));
            if h.deg() > 0 && (frob.rows.is_none() || 2 * h.deg() <= frob.modulus().deg()) {
                xq = xq.rem(&h).unwrap();
                frob = FrobeniusMap::new(&h);
            }
        }
    }
    if h.deg() > 0 {
        out.push((h.deg(), h));
    }
    out
}

/// Cantor-Zassenhaus splitting of a monic squarefree `h` whose irreducible
/// factors all have degree `d`.
fn edf(h: &Poly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    let n = h.deg();
    if n == d {
        out.push(h.clone());
        return;
    }
    let field = h.field();
    let q = field.order();
    let frob = (q % 2 == 1).then(|| FrobeniusMap::new(h));
    loop {
        let a = Poly::from_raw(field, (0..n).map(|_| rng.gen_range(0..q)).collect());
        if a.is_constant() {
            continue;
        }
        let b = match &frob {
            Some(frob) => {
                // a^((q^d - 1)/2) = (a^(1 + q + ... + q^(d-1)))^((q-1)/2)
                let mut t = a.clone();
                let mut acc = a.clone();
                for _ in 1..d {
                    t = frob.apply(&t);
                    acc = (&acc * &t).rem(h).unwrap();
                }
                &acc.powmod((q as u128 - 1) / 2, h).unwrap() - &Poly::one(field)
            }
            None => {
                // Absolute trace from F_{q^d} down to F_2.
                let steps = field.degree() as usize * d;
                let mut t = a.clone();
                let mut acc = a.clone();
                for _ in 1..steps {
                    t = (&t * &t).rem(h).unwrap();
                    acc = &acc + &t;
                }
                acc
            }
        };
        let g = h.gcd(&b).unwrap();
        if g.deg() > 0 && g.deg() < n {
            edf(&g, d, rng, out);
            edf(&h.div_exact(&g), d, rng, out);
            return;
        }
    }
}

impl Poly {
    /// Complete factorization with the default [`Config`].
    pub fn factor(&self) -> Result<Factorization> {
        self.factor_with(&Config::default())
    }

    /// Complete factorization. The seed only drives equal-degree splitting;
    /// the canonical ordering makes the result independent of it.
    pub fn factor_with(&self, cfg: &Config) -> Result<Factorization> {
        if self.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        if self.deg() > cfg.degree_cap {
            return Err(Error::DegreeOverflow { degree: self.deg() as u128, cap: cfg.degree_cap });
        }
        let unit = self.leading().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut factors = Vec::new();
        for (part, e) in squarefree_decomposition(&self.monic()) {
            for (d, block) in ddf(&part) {
                let mut irreducible = Vec::new();
                edf(&block, d, &mut rng, &mut irreducible);
                factors.extend(irreducible.into_iter().map(|g| (g, e)));
            }
        }
        sort_canonical(&mut factors);
        Ok(Factorization { unit, factors })
    }

    /// Monic product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> Result<Poly> {
        if self.is_zero() {
            return Err(Error::ConstantPolynomial);
        }
        if self.is_constant() {
            return Ok(Poly::one(self.field()));
        }
        Ok(squarefree_decomposition(&self.monic()).into_iter().fold(Poly::one(self.field()), |acc, (s, _)| &acc * &s))
    }

    pub fn is_irreducible(&self) -> Result<bool> {
        let n = match self.degree() {
            None | Some(0) => return Ok(false),
            Some(1) => return Ok(true),
            Some(n) => n,
        };
        let f = self.monic();
        if !f.gcd(&f.derivative())?.is_one() {
            return Ok(false);
        }
        let parts = ddf(&f);
        Ok(parts.len() == 1 && parts[0].0 == n)
    }

    /// Distinct roots in the coefficient field, in canonical order.
    pub fn roots(&self) -> Result<Vec<FieldElement>> {
        if self.is_zero() {
            return Err(Error::ConstantPolynomial);
        }
        let field = self.field();
        if self.is_constant() {
            return Ok(Vec::new());
        }
        let f = self.monic();
        let x = Poly::x(field);
        let xq = x.powmod(field.order() as u128, &f)?;
        let linear = f.gcd(&(&xq - &x))?;
        if linear.is_constant() {
            return Ok(Vec::new());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut parts = Vec::new();
        edf(&linear, 1, &mut rng, &mut parts);
        let mut roots: Vec<FieldElement> = parts.iter().map(|l| -&l.coeff(0)).collect();
        roots.sort_by_key(|r| r.value());
        Ok(roots)
    }
}
