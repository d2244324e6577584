//! Dispatch for monomial and linearized `g`, and the exponential-growth
//! construction `g = (x^q - x)^(q - 1)`.

use super::{butler_profile, reis_profile, QAssociate};
use crate::classify::{combine_profiles, p_reduction};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;
use crate::profile::{profile_direct, CensusRow, FactorCensus, IterProfile};

/// A `g` with a closed-form profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecialG {
    /// `g = x^D`.
    Monomial(u64),
    /// `g = L_u`, the linearized `q`-associate of `u`.
    Linearized(Poly),
}

impl SpecialG {
    /// The polynomial `g` itself over `field`.
    pub fn to_poly(&self, field: &Field) -> Result<Poly> {
        match self {
            SpecialG::Monomial(d) => {
                let d = usize::try_from(*d).map_err(|_| Error::Overflow("monomial degree"))?;
                Ok(Poly::monomial(&field.one(), d))
            }
            SpecialG::Linearized(u) => Ok(QAssociate::from_conventional(&u.embed_into(field)?)?.linearized),
        }
    }
}

/// Profile of `(f, g)` for irreducible `f` and monomial or `q`-linearized
/// `g`, read off the closed form for the `p`-reduction `G` of `g`.
///
/// With `g = G^(p^h)`, the multiplicities `E`, `e` and every census
/// multiplicity are those of `(f, G)` times `p^(n h)`; everything else is
/// unchanged. `G` must be `x^d` with `d >= 2` or the `q`-associate of some
/// `u` with `deg u >= 1`.
pub fn reduce_special_g(f: &Poly, g: &Poly, n: u32) -> Result<IterProfile> {
    let red = p_reduction(g)?;
    if red.d < 2 {
        return Err(Error::NotSpecialForm("the p-reduction of g is linear".into()));
    }
    let big_g = &red.reduced;
    let base = if is_monic_monomial(big_g) {
        butler_profile(f, red.d as u64, n)?
    } else {
        let u = QAssociate::from_linearized(big_g)
            .map_err(|_| Error::NotSpecialForm("g is neither x^D nor q-linearized".into()))?;
        reis_profile(f, &u.conventional, n)?
    };
    let p = g.field().characteristic();
    let scale = (red.h as u64)
        .checked_mul(n as u64)
        .and_then(|e| u32::try_from(e).ok())
        .and_then(|e| p.checked_pow(e))
        .ok_or(Error::Overflow("p^(n h)"))?;
    if scale == 1 {
        return Ok(base);
    }
    let census = base.census.scale_multiplicities(scale);
    Ok(IterProfile { max_mult: base.max_mult * scale, min_mult: base.min_mult * scale, census, ..base })
}

fn is_monic_monomial(g: &Poly) -> bool {
    g.is_monic() && g.coeffs().iter().filter(|&&c| c != 0).count() == 1
}

/// Profile of `f(g^(n)(x))` for any nonconstant `f` and special `g`, from
/// the closed forms on the irreducible factors of `f`.
///
/// The factor `x` is handled directly for `g = x^D`, where it contributes
/// `x^(D^n)`; for linearized `g` it is rejected with `MonomialF`.
pub fn closed_form_profile(f: &Poly, special: &SpecialG, n: u32) -> Result<IterProfile> {
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let g = special.to_poly(f.field())?;
    let mut parts = Vec::new();
    for (fi, e) in &f.factor()?.factors {
        let is_x = fi.deg() == 1 && fi.coeff(0).is_zero();
        let profile = match special {
            SpecialG::Monomial(d) if is_x => {
                let mult = d.checked_pow(n).ok_or(Error::Overflow("D^n"))?;
                IterProfile::from_census(
                    n,
                    FactorCensus::new(vec![CensusRow { degree: 1, multiplicity: mult, count: 1, order: None }]),
                )
            }
            _ => reduce_special_g(fi, &g, n)?,
        };
        parts.push((*e, profile));
    }
    combine_profiles(&parts, n)
}

/// Outcome of the exponential-growth construction for one `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpGrowthReport {
    /// `(x^q - x)^(q - 1)`.
    pub g: Poly,
    /// Degree of `f`.
    pub k: u64,
    pub separable: bool,
    pub reducible: bool,
    /// Degrees of the irreducible factors of `f(g(x))`.
    pub factor_degrees: Vec<u64>,
    /// Whether every factor degree is `d k` with `d >= 2`.
    pub degrees_ok: bool,
    /// A monic irreducible factor of `f(g(x))` whose constant term avoids
    /// `0` and `1`, so the construction can be repeated on it.
    pub next_f: Option<Poly>,
    /// `(n, N(n), M(n))` for each checked `n`.
    pub growth: Vec<(u32, u64, u64)>,
}

impl ExpGrowthReport {
    pub fn passed(&self) -> bool {
        let k = self.k;
        self.separable
            && self.reducible
            && self.degrees_ok
            && self.next_f.is_some()
            && self.growth.iter().all(|&(n, nn, mm)| nn >= 1 << n && mm >= k << n)
    }
}

/// Runs the construction `g = (x^q - x)^(q - 1)` on monic irreducible `f`
/// with `f(0)` not in `{0, 1}`, checking the one-step facts and then
/// `N(n) >= 2^n`, `M(n) >= k 2^n` for `1 <= n <= n_max`.
pub fn exp_growth_construction(f: &Poly, n_max: u32, cfg: &Config) -> Result<ExpGrowthReport> {
    let field = f.field();
    let q = field.order();
    if q <= 2 {
        return Err(Error::QTooSmall);
    }
    if !f.is_monic() || !f.is_irreducible()? {
        return Err(Error::NotIrreducible);
    }
    if f.coeff(0).is_zero() || f.coeff(0).is_one() {
        return Err(Error::BadConstantTerm);
    }
    let k = f.deg() as u64;
    let xq = Poly::monomial(&field.one(), q as usize);
    let g = (&xq - &Poly::x(field)).pow(q - 1);
    let composed = f.compose(&g)?;
    let separable = composed.gcd(&composed.derivative())?.is_one();
    let fac = composed.factor_with(cfg)?;
    let reducible = fac.factors.len() > 1 || fac.factors.iter().any(|(_, e)| *e > 1);
    let factor_degrees: Vec<u64> = fac.factors.iter().map(|(p, _)| p.deg() as u64).collect();
    let degrees_ok = factor_degrees.iter().all(|&d| d % k == 0 && d / k >= 2);
    let next_f = fac.factors.iter().map(|(p, _)| p).find(|p| !p.coeff(0).is_zero() && !p.coeff(0).is_one()).cloned();
    let mut growth = Vec::new();
    for n in 1..=n_max {
        let prof = profile_direct(f, &g, n, cfg)?;
        growth.push((n, prof.count, prof.max_deg));
    }
    Ok(ExpGrowthReport { g, k, separable, reducible, factor_degrees, degrees_ok, next_f, growth })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    fn poly(f: &Field, s: &str) -> Poly {
        Poly::parse(f, s).unwrap()
    }

    #[test]
    fn p_reduction_transfer() {
        let cfg = Config::default();
        let f3 = field(3);
        let g = poly(&f3, "x^18");
        for f in ["x+1", "x^2+1", "x+2"] {
            let f = poly(&f3, f);
            for n in 0..=2 {
                let closed = reduce_special_g(&f, &g, n).unwrap();
                let direct = profile_direct(&f, &g, n, &cfg).unwrap();
                assert!(closed.same_values(&direct), "{f} n={n}");
                assert_eq!(closed.min_mult, 9u64.pow(n));
            }
        }
        // h = 0 passes through unchanged.
        let f5 = field(5);
        let f = poly(&f5, "x+2");
        assert_eq!(reduce_special_g(&f, &poly(&f5, "x^6"), 2).unwrap(), butler_profile(&f, 6, 2).unwrap());
    }

    #[test]
    fn linearized_transfer() {
        // L_(x (x+1)) = (x^3 + x)^3 over F_3: h = 1 on top of the q-associate of x+1.
        let cfg = Config::default();
        let f3 = field(3);
        let g = SpecialG::Linearized(poly(&f3, "x^2+x")).to_poly(&f3).unwrap();
        assert_eq!(g, poly(&f3, "x^9+x^3"));
        let f = poly(&f3, "x^2+x+2");
        for n in 0..=2 {
            let closed = reduce_special_g(&f, &g, n).unwrap();
            assert!(closed.same_values(&profile_direct(&f, &g, n, &cfg).unwrap()), "n={n}");
        }
    }

    #[test]
    fn guards() {
        let (f2, f3) = (field(2), field(3));
        assert!(matches!(reduce_special_g(&poly(&f2, "x+1"), &poly(&f2, "x^4"), 1), Err(Error::NotSpecialForm(_))));
        assert!(matches!(reduce_special_g(&poly(&f3, "x+1"), &poly(&f3, "x^2+1"), 1), Err(Error::NotSpecialForm(_))));
        assert_eq!(
            exp_growth_construction(&poly(&f2, "x^2+x+1"), 1, &Config::default()).unwrap_err(),
            Error::QTooSmall
        );
        assert_eq!(
            exp_growth_construction(&poly(&f3, "x^2+1"), 1, &Config::default()).unwrap_err(),
            Error::BadConstantTerm
        );
    }

    #[test]
    fn reducible_f_combines() {
        let cfg = Config::default();
        let f3 = field(3);
        let f = poly(&f3, "x^3+x^2"); // x^2 (x+1)
        for n in 0..=2 {
            let closed = closed_form_profile(&f, &SpecialG::Monomial(2), n).unwrap();
            let direct = profile_direct(&f, &poly(&f3, "x^2"), n, &cfg).unwrap();
            assert!(closed.same_values(&direct), "n={n}");
        }
        let f = poly(&f3, "x^2+2"); // (x+1)(x+2)
        let u = poly(&f3, "x+1");
        let g = SpecialG::Linearized(u.clone()).to_poly(&f3).unwrap();
        for n in 0..=2 {
            let closed = closed_form_profile(&f, &SpecialG::Linearized(u.clone()), n).unwrap();
            assert!(closed.same_values(&profile_direct(&f, &g, n, &cfg).unwrap()), "n={n}");
        }
    }

    #[test]
    fn exp_growth_over_f3() {
        let f3 = field(3);
        let r = exp_growth_construction(&poly(&f3, "x^2+x+2"), 2, &Config::default()).unwrap();
        assert_eq!(r.g, poly(&f3, "x^6+x^4+x^2"));
        assert!(r.separable && r.reducible && r.degrees_ok, "{r:?}");
        assert!(r.next_f.is_some());
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.factor_degrees.iter().sum::<u64>(), 12);
    }
}
