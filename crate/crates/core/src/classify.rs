//! Degenerate pairs `(f, g)` and the `p`-reduction of `g`.
//!
//! A pair is critical when `f = b(x-a)^k` and `g = c(x-a)^D + a`, and
//! `p`-critical when `g = a x^(p^h) + b`. For such pairs the profile is
//! frozen: multiplicities scale by `D^n` and everything else is constant.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::poly::{pth_root, Poly};
use crate::profile::IterProfile;

/// `g = G^(p^h)` with `G' != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PReduction {
    pub reduced: Poly,
    pub h: u32,
    /// Degree of `reduced`.
    pub d: usize,
    /// Degree of `g`, equal to `d * p^h`.
    pub original_degree: usize,
}

/// How a pair `(f, g)` behaves under iteration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairClass {
    /// `f = beta (x - alpha)^k` and `g = gamma (x - alpha)^D + alpha`.
    Critical {
        alpha: FieldElement,
        beta: FieldElement,
        gamma: FieldElement,
        k: usize,
        d: usize,
        /// Set when `g` is also of the form `a x^(p^h) + b`.
        also_p_critical: bool,
    },
    /// `g = a x^(p^h) + b`.
    PCritical {
        a: FieldElement,
        b: FieldElement,
        h: u32,
    },
    Generic(PReduction),
}

impl PairClass {
    pub fn is_generic(&self) -> bool {
        matches!(self, PairClass::Generic(_))
    }

    /// Short lowercase name: `critical`, `p-critical` or `generic`.
    pub fn name(&self) -> &'static str {
        match self {
            PairClass::Critical { .. } => "critical",
            PairClass::PCritical { .. } => "p-critical",
            PairClass::Generic(_) => "generic",
        }
    }
}

impl fmt::Display for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairClass::Critical { alpha, beta, gamma, k, d, also_p_critical } => {
                write!(f, "critical alpha={alpha} beta={beta} gamma={gamma} k={k} D={d}")?;
                if *also_p_critical {
                    write!(f, " also-p-critical")?;
                }
                Ok(())
            }
            PairClass::PCritical { a, b, h } => write!(f, "p-critical a={a} b={b} h={h}"),
            PairClass::Generic(r) => write!(f, "generic d={} h={}", r.d, r.h),
        }
    }
}

/// The `p`-reduction of a nonconstant `g`.
pub fn p_reduction(g: &Poly) -> Result<PReduction> {
    if g.degree().unwrap_or(0) == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let mut reduced = g.clone();
    let mut h = 0;
    while reduced.derivative().is_zero() {
        reduced = pth_root(&reduced);
        h += 1;
    }
    Ok(PReduction { d: reduced.deg(), reduced, h, original_degree: g.deg() })
}

/// `(a, b, h)` with `g = a x^(p^h) + b`, when `deg g >= 2` and the
/// `p`-reduction of `g` is linear.
pub fn is_p_critical(g: &Poly) -> Option<(FieldElement, FieldElement, u32)> {
    if g.degree().unwrap_or(0) < 2 {
        return None;
    }
    let r = p_reduction(g).ok()?;
    (r.d == 1).then(|| (g.leading().unwrap(), g.coeff(0), r.h))
}

/// `(alpha, beta, gamma)` when the squarefree parts of `f` and `g - alpha` are
/// both `x - alpha`.
pub fn is_critical(f: &Poly, g: &Poly) -> Option<(FieldElement, FieldElement, FieldElement)> {
    if f.degree().unwrap_or(0) < 1 || g.degree().unwrap_or(0) < 2 {
        return None;
    }
    let rf = f.squarefree_part().ok()?;
    if rf.deg() != 1 {
        return None;
    }
    let alpha = -&rf.coeff(0);
    let shifted = g - &Poly::constant(&alpha);
    (shifted.squarefree_part().ok()? == rf).then(|| (alpha, f.leading().unwrap(), g.leading().unwrap()))
}

/// Classifies `(f, g)`; critical takes precedence over `p`-critical.
pub fn classify_pair(f: &Poly, g: &Poly) -> Result<PairClass> {
    if f.degree().unwrap_or(0) < 1 {
        return Err(Error::DegreeTooSmall("f must have degree at least 1".into()));
    }
    if g.degree().unwrap_or(0) < 2 {
        return Err(Error::DegreeTooSmall("g must have degree at least 2".into()));
    }
    if !f.field().same(g.field()) {
        return Err(Error::FieldMismatch);
    }
    let pc = is_p_critical(g);
    if let Some((alpha, beta, gamma)) = is_critical(f, g) {
        return Ok(PairClass::Critical { alpha, beta, gamma, k: f.deg(), d: g.deg(), also_p_critical: pc.is_some() });
    }
    if let Some((a, b, h)) = pc {
        return Ok(PairClass::PCritical { a, b, h });
    }
    Ok(PairClass::Generic(p_reduction(g)?))
}

/// Profile of `f = prod f_i^(e_i)` from the profiles of the distinct
/// irreducible factors `f_i` with the same `g` and `n`.
///
/// For `n >= 1` the functions are combined directly: `E = max e_i E_i`,
/// `e = min e_i e_i'`, `M = max M_i`, `m = min m_i`, and `Delta`, `N` add up.
/// For `n = 0` everything is read off the merged census, which is the
/// factorization of `f` itself.
pub fn combine_profiles(parts: &[(u64, IterProfile)], n: u32) -> Result<IterProfile> {
    if parts.is_empty() {
        return Err(Error::EmptyParts);
    }
    let census = parts
        .iter()
        .fold(crate::profile::FactorCensus::default(), |acc, (e, p)| acc.merge(&p.census.scale_multiplicities(*e)));
    if n == 0 {
        return Ok(IterProfile::from_census(0, census));
    }
    Ok(IterProfile {
        n,
        max_mult: parts.iter().map(|(e, p)| e * p.max_mult).max().unwrap(),
        min_mult: parts.iter().map(|(e, p)| e * p.min_mult).min().unwrap(),
        delta: parts.iter().map(|(_, p)| p.delta).sum(),
        max_deg: parts.iter().map(|(_, p)| p.max_deg).max().unwrap(),
        min_deg: parts.iter().map(|(_, p)| p.min_deg).min().unwrap(),
        count: parts.iter().map(|(_, p)| p.count).sum(),
        census,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Config;
    use crate::field::Field;
    use crate::profile::profile_direct;

    fn field(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    fn poly(f: &Field, s: &str) -> Poly {
        Poly::parse(f, s).unwrap()
    }

    #[test]
    fn p_reductions() {
        let (f2, f3) = (field(2), field(3));
        let r = p_reduction(&poly(&f3, "x^2+1")).unwrap();
        assert_eq!((r.reduced, r.h, r.d), (poly(&f3, "x^2+1"), 0, 2));
        let r = p_reduction(&poly(&f2, "x^4+x^2+1")).unwrap();
        assert_eq!((r.reduced, r.h, r.d, r.original_degree), (poly(&f2, "x^2+x+1"), 1, 2, 4));
        let r = p_reduction(&poly(&f3, "x^9")).unwrap();
        assert_eq!((r.reduced, r.h), (poly(&f3, "x"), 2));
        assert_eq!(p_reduction(&poly(&f3, "2")).unwrap_err(), Error::ConstantPolynomial);
    }

    #[test]
    fn p_critical_detection() {
        let (f2, f3) = (field(2), field(3));
        let (a, b, h) = is_p_critical(&poly(&f2, "x^2+1")).unwrap();
        assert_eq!((a.value(), b.value(), h), (1, 1, 1));
        assert!(is_p_critical(&poly(&f3, "x^2")).is_none());
        let (a, b, h) = is_p_critical(&poly(&f3, "2*x^9+1")).unwrap();
        assert_eq!((a.value(), b.value(), h), (2, 1, 2));
    }

    #[test]
    fn critical_detection() {
        let (f3, f5) = (field(3), field(5));
        // 2(x-1)^3 and 3(x-1)^2 + 1, expanded.
        let f = poly(&f5, "2*x^3 + 4*x^2 + 1*x + 3");
        let g = poly(&f5, "3*x^2 + 4*x + 4");
        let (alpha, beta, gamma) = is_critical(&f, &g).unwrap();
        assert_eq!((alpha.value(), beta.value(), gamma.value()), (1, 2, 3));
        assert!(is_critical(&poly(&f3, "x^2+1"), &poly(&f3, "x^2")).is_none());
        let (alpha, beta, gamma) = is_critical(&poly(&f5, "x^2"), &poly(&f5, "x^3")).unwrap();
        assert_eq!((alpha.value(), beta.value(), gamma.value()), (0, 1, 1));
    }

    #[test]
    fn classification_and_display() {
        let (f2, f3) = (field(2), field(3));
        let c = classify_pair(&poly(&f3, "x^2+1"), &poly(&f3, "x^2")).unwrap();
        assert_eq!(c.to_string(), "generic d=2 h=0");
        let c = classify_pair(&poly(&f2, "x"), &poly(&f2, "x^2+1")).unwrap();
        assert_eq!(c.to_string(), "p-critical a=1 b=1 h=1");
        let c = classify_pair(&poly(&f2, "x^2"), &poly(&f2, "x^4")).unwrap();
        assert!(matches!(c, PairClass::Critical { also_p_critical: true, .. }));
        assert!(matches!(classify_pair(&poly(&f3, "x"), &poly(&f3, "x+1")), Err(Error::DegreeTooSmall(_))));
    }

    #[test]
    fn degenerate_pairs_freeze() {
        // E and e scale by D^n, all else constant.
        let cfg = Config::default();
        let f5 = field(5);
        let f2 = field(2);
        let cases = [
            (poly(&f5, "2*x^3 + 4*x^2 + 1*x + 3"), poly(&f5, "3*x^2 + 4*x + 4")),
            (poly(&f2, "x^2+x+1"), poly(&f2, "x^2+1")),
            (poly(&f5, "x^2+2"), poly(&f5, "3*x^5+1")),
        ];
        for (f, g) in cases {
            assert!(!classify_pair(&f, &g).unwrap().is_generic());
            let p0 = profile_direct(&f, &g, 0, &cfg).unwrap();
            let d = g.deg() as u64;
            for n in 1..=3 {
                let pn = profile_direct(&f, &g, n, &cfg).unwrap();
                assert_eq!(pn.max_mult, p0.max_mult * d.pow(n));
                assert_eq!(pn.min_mult, p0.min_mult * d.pow(n));
                assert_eq!((pn.delta, pn.max_deg, pn.min_deg, pn.count), (p0.delta, p0.max_deg, p0.min_deg, p0.count));
            }
        }
    }

    #[test]
    fn combining_factor_profiles() {
        let cfg = Config::default();
        let f3 = field(3);
        let g = poly(&f3, "x^2");
        let f = poly(&f3, "x^2 + 2"); // (x+1)(x+2)
        for n in 0..3 {
            let parts: Vec<(u64, IterProfile)> = f
                .factor()
                .unwrap()
                .factors
                .iter()
                .map(|(fi, e)| (*e, profile_direct(fi, &g, n, &cfg).unwrap()))
                .collect();
            assert_eq!(combine_profiles(&parts, n).unwrap(), profile_direct(&f, &g, n, &cfg).unwrap());
        }
        assert_eq!(combine_profiles(&[], 1).unwrap_err(), Error::EmptyParts);
    }
}
