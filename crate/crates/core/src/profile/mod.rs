//! The factorization profile of `f(g^(n)(x))`: root multiplicities, factor
//! degrees and factor counts.
//!
//! Profiles are computed by factoring the composition directly, or through a
//! root `alpha` of an irreducible `f` by factoring `g^(n)(x) - alpha` over
//! `F_q(alpha)`.

mod census;
mod preimage;
mod spin;

use num_rational::Ratio;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::poly::Poly;

pub use census::{CensusRow, FactorCensus, OrderTag};
pub(crate) use preimage::{lift, nu_pair};
pub use preimage::{nu_bounds, preimage_tuples, PreimageTuple};
pub use spin::{factor_composition, spin};

/// The arithmetic functions of the factorization of `f(g^(n)(x))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterProfile {
    pub n: u32,
    /// Largest multiplicity of an irreducible factor (`E`).
    pub max_mult: u64,
    /// Smallest multiplicity of an irreducible factor (`e`).
    pub min_mult: u64,
    /// Degree of the squarefree part.
    pub delta: u64,
    /// Largest degree of an irreducible factor (`M`).
    pub max_deg: u64,
    /// Smallest degree of an irreducible factor (`m`).
    pub min_deg: u64,
    /// Number of distinct irreducible factors.
    pub count: u64,
    pub census: FactorCensus,
}

impl IterProfile {
    /// Reads every function off a nonempty census.
    pub fn from_census(n: u32, census: FactorCensus) -> Self {
        let rows = &census.rows;
        assert!(!rows.is_empty(), "a census of a nonconstant polynomial has rows");
        IterProfile {
            n,
            max_mult: rows.iter().map(|r| r.multiplicity).max().unwrap(),
            min_mult: rows.iter().map(|r| r.multiplicity).min().unwrap(),
            delta: rows.iter().map(|r| r.degree * r.count).sum(),
            max_deg: rows.iter().map(|r| r.degree).max().unwrap(),
            min_deg: rows.iter().map(|r| r.degree).min().unwrap(),
            count: rows.iter().map(|r| r.count).sum(),
            census,
        }
    }

    /// The average degree `delta / count` of the distinct irreducible factors.
    pub fn average_degree(&self) -> Ratio<u64> {
        Ratio::new(self.delta, self.count)
    }

    /// Sum of `multiplicity * degree * count`, the degree of the composition.
    pub fn total_degree(&self) -> u128 {
        self.census.total_degree()
    }

    /// Whether the values agree with each other and with the census.
    pub fn is_consistent(&self) -> bool {
        let derived = IterProfile::from_census(self.n, self.census.clone());
        derived == *self
            && self.min_mult <= self.max_mult
            && self.min_deg <= self.max_deg
            && self.min_deg * self.count <= self.delta
            && self.delta <= self.max_deg * self.count
    }

    /// The same functions, ignoring the order tags of the census.
    pub fn same_values(&self, other: &IterProfile) -> bool {
        self.n == other.n
            && self.max_mult == other.max_mult
            && self.min_mult == other.min_mult
            && self.delta == other.delta
            && self.max_deg == other.max_deg
            && self.min_deg == other.min_deg
            && self.count == other.count
            && self.census.shape() == other.census.shape()
    }
}

fn check_degrees(f: &Poly, g: &Poly) -> Result<()> {
    if f.degree().unwrap_or(0) < 1 {
        return Err(Error::DegreeTooSmall("f must have degree at least 1".into()));
    }
    if g.degree().unwrap_or(0) < 1 {
        return Err(Error::DegreeTooSmall("g must have degree at least 1".into()));
    }
    if !f.field().same(g.field()) {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

/// `deg f * (deg g)^n`, or `DegreeOverflow` when it exceeds the cap.
pub(crate) fn composed_degree(k: usize, d: usize, n: u32, cap: usize) -> Result<usize> {
    let degree = (d as u128).checked_pow(n).and_then(|v| v.checked_mul(k as u128)).unwrap_or(u128::MAX);
    if degree > cap as u128 {
        return Err(Error::DegreeOverflow { degree, cap });
    }
    Ok(degree as usize)
}

/// Profile of `f(g^(n)(x))` by factoring the composition.
pub fn profile_direct(f: &Poly, g: &Poly, n: u32, cfg: &Config) -> Result<IterProfile> {
    check_degrees(f, g)?;
    composed_degree(f.deg(), g.deg(), n, cfg.degree_cap)?;
    let composed = f.compose(&g.iterate(n, cfg.degree_cap)?)?;
    Ok(IterProfile::from_census(n, FactorCensus::of_poly(&composed, cfg)?))
}

/// A field containing a root of the irreducible `f`, with that root.
///
/// Over a prime field the root is the class of `x` in `F_p[x]/(f)`. Over an
/// extension field `F_q` it is the smallest root of `f` in `F_q.extend(k)`.
pub fn root_field(f: &Poly) -> Result<(Field, FieldElement)> {
    let base = f.field();
    let k = f.degree().ok_or(Error::ConstantPolynomial)?;
    if k == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if !f.is_irreducible()? {
        return Err(Error::NotIrreducible);
    }
    let monic = f.monic();
    if k == 1 {
        return Ok((base.clone(), -&monic.coeff(0)));
    }
    if base.is_prime_field() {
        let field = Field::new(base.characteristic(), k as u32, Some(monic.coeffs()))?;
        let alpha = field.generator();
        return Ok((field, alpha));
    }
    let field = base.extend(k as u32)?;
    let alpha = monic.embed_into(&field)?.roots()?.into_iter().next().ok_or(Error::NotIrreducible)?;
    Ok((field, alpha))
}

/// Profile of `f(g^(n)(x))` for irreducible `f` of degree `k`, computed from
/// the factorization of `g^(n)(x) - alpha` over `F_q(alpha)`: multiplicities
/// carry over and every factor degree is multiplied by `k`.
pub fn profile_via_root(f: &Poly, g: &Poly, n: u32, cfg: &Config) -> Result<IterProfile> {
    check_degrees(f, g)?;
    composed_degree(1, g.deg(), n, cfg.degree_cap)?;
    let (field, alpha) = root_field(f)?;
    let k = f.deg() as u64;
    let lifted = g.embed_into(&field)?;
    let shifted = &lifted.iterate(n, cfg.degree_cap)? - &Poly::constant(&alpha);
    let census = FactorCensus::of_poly(&shifted, cfg)?.scale_degrees(k);
    Ok(IterProfile::from_census(n, census))
}

/// Least `i >= 1` with `g^(i)(alpha) = alpha`, or `None` when `alpha` is only
/// preperiodic. The orbit stays in the field of `alpha`, so it is finite.
pub fn is_g_periodic(alpha: &FieldElement, g: &Poly) -> Result<Option<u64>> {
    let step = |a: &FieldElement| g.eval(a);
    // Brent's cycle detection finds the period `lam`.
    let mut power = 1u64;
    let mut lam = 1u64;
    let mut tortoise = alpha.clone();
    let mut hare = step(alpha)?;
    while tortoise != hare {
        if power == lam {
            tortoise = hare.clone();
            power *= 2;
            lam = 0;
        }
        hare = step(&hare)?;
        lam += 1;
    }
    // `alpha` is periodic exactly when it returns to itself after `lam` steps.
    let mut x = alpha.clone();
    for _ in 0..lam {
        x = step(&x)?;
    }
    Ok((x == *alpha).then_some(lam))
}

/// Whether some root of `f` is `g`-periodic. Since `g` has coefficients in
/// `F_q` it commutes with Frobenius, so one root per irreducible factor
/// decides the question.
pub fn has_periodic_root(f: &Poly, g: &Poly, cfg: &Config) -> Result<bool> {
    for (factor, _) in f.factor_with(cfg)?.factors {
        let (_, alpha) = root_field(&factor)?;
        if is_g_periodic(&alpha, g)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Profile of `f(g^(n)(x))` through the roots of every irreducible factor of
/// `f`, merged with [`crate::classify::combine_profiles`].
pub fn profile_via_roots(f: &Poly, g: &Poly, n: u32, cfg: &Config) -> Result<IterProfile> {
    check_degrees(f, g)?;
    let parts = f
        .factor_with(cfg)?
        .factors
        .iter()
        .map(|(fi, e)| Ok((*e, profile_via_root(fi, g, n, cfg)?)))
        .collect::<Result<Vec<_>>>()?;
    crate::classify::combine_profiles(&parts, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(p: u64, f: &str, g: &str) -> (Poly, Poly) {
        let field = Field::prime(p).unwrap();
        (Poly::parse(&field, f).unwrap(), Poly::parse(&field, g).unwrap())
    }

    #[test]
    fn x_plus_one_under_squaring() {
        let cfg = Config::default();
        let (f, g) = setup(3, "x+1", "x^2");
        let p0 = profile_direct(&f, &g, 0, &cfg).unwrap();
        assert_eq!((p0.max_mult, p0.delta, p0.count), (1, 1, 1));
        let p1 = profile_direct(&f, &g, 1, &cfg).unwrap();
        assert_eq!((p1.max_mult, p1.min_mult, p1.delta, p1.max_deg, p1.min_deg, p1.count), (1, 1, 2, 2, 2, 1));
        let p2 = profile_direct(&f, &g, 2, &cfg).unwrap();
        assert_eq!((p2.count, p2.max_deg, p2.min_deg, p2.delta), (2, 2, 2, 4));
        assert_eq!(p2.average_degree(), Ratio::new(2, 1));
        for p in [&p0, &p1, &p2] {
            assert!(p.is_consistent());
            assert_eq!(p.total_degree(), 1 << p.n);
        }
    }

    #[test]
    fn via_root_matches_direct() {
        let cfg = Config::default();
        for (p, f, g) in [(3, "x+1", "x^2"), (3, "x^2+1", "x^2+x"), (2, "x^3+x+1", "x^3+x^2"), (5, "x^2+2", "x^3+x")] {
            let (f, g) = setup(p, f, g);
            for n in 0..3 {
                let a = profile_direct(&f, &g, n, &cfg).unwrap();
                let b = profile_via_root(&f, &g, n, &cfg).unwrap();
                assert_eq!(a, b, "{f} / {g} / {n}");
            }
        }
    }

    #[test]
    fn via_root_over_extension_base() {
        let cfg = Config::default();
        let f4 = Field::new(2, 2, None).unwrap();
        let f = Poly::parse(&f4, "x^2 + x + t").unwrap();
        assert!(f.is_irreducible().unwrap());
        let g = Poly::parse(&f4, "x^3 + t*x + 1").unwrap();
        for n in 0..3 {
            assert_eq!(profile_direct(&f, &g, n, &cfg).unwrap(), profile_via_root(&f, &g, n, &cfg).unwrap());
        }
    }

    #[test]
    fn root_field_conventions() {
        let (f, _) = setup(3, "x^2+1", "x");
        let (field, alpha) = root_field(&f).unwrap();
        assert_eq!(field.order(), 9);
        assert_eq!(alpha, field.generator());
        assert!(f.eval(&alpha).unwrap().is_zero());
        let (f, _) = setup(3, "2*x+2", "x");
        assert_eq!(root_field(&f).unwrap().1.value(), 2);
        let (f, _) = setup(3, "x^2+2", "x");
        assert_eq!(root_field(&f).unwrap_err(), Error::NotIrreducible);
    }

    #[test]
    fn periodicity() {
        let f3 = Field::prime(3).unwrap();
        let f7 = Field::prime(7).unwrap();
        let sq3 = Poly::parse(&f3, "x^2").unwrap();
        let sq7 = Poly::parse(&f7, "x^2").unwrap();
        assert_eq!(is_g_periodic(&f3.element(1), &sq3).unwrap(), Some(1));
        assert_eq!(is_g_periodic(&f7.element(2), &sq7).unwrap(), Some(2));
        assert_eq!(is_g_periodic(&f3.element(2), &sq3).unwrap(), None);
        let cfg = Config::default();
        assert!(has_periodic_root(&Poly::parse(&f7, "x-2").unwrap(), &sq7, &cfg).unwrap());
        assert!(!has_periodic_root(&Poly::parse(&f3, "x+1").unwrap(), &sq3, &cfg).unwrap());
        assert!(has_periodic_root(&Poly::x(&f3), &sq3, &cfg).unwrap());
    }

    #[test]
    fn degree_cap_is_enforced() {
        let (f, g) = setup(3, "x+1", "x^2");
        let cfg = Config::default().with_degree_cap(100);
        assert!(matches!(profile_direct(&f, &g, 7, &cfg), Err(Error::DegreeOverflow { degree: 128, .. })));
        assert!(matches!(profile_via_root(&f, &g, 7, &cfg), Err(Error::DegreeOverflow { .. })));
    }
}
