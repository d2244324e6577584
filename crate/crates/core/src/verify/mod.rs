//! Checkers that test the growth laws of the arithmetic functions at finite
//! `n` and report every inequality they evaluate.
//!
//! All comparisons are exact: square roots and logarithms are removed by
//! squaring or exponentiating both sides before comparing integers.

mod witness;

use num_bigint::BigUint;
use num_traits::One;
use serde_json::{json, Value};

use crate::classify::{classify_pair, PReduction, PairClass};
use crate::closedform::{closed_form_profile, exp_growth_construction, fq_order, ord_x_mod, split_int, SpecialG};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::profile::{has_periodic_root, nu_pair, profile_direct, root_field, FactorCensus, IterProfile, OrderTag};
use crate::report::CheckReport;

pub use witness::{find_delta_witness, DeltaWitness};

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn inputs(f: &Poly, g: &Poly, n_max: u32) -> Value {
    json!({ "field": f.field().to_string(), "f": f.to_string(), "g": g.to_string(), "n_max": n_max })
}

/// The `p`-reduction of `g` when `(f, g)` is generic, `NotGeneric` otherwise.
fn require_generic(f: &Poly, g: &Poly) -> Result<PReduction> {
    match classify_pair(f, g)? {
        PairClass::Generic(r) => Ok(r),
        other => Err(Error::NotGeneric(other.name().into())),
    }
}

fn profiles(f: &Poly, g: &Poly, n_max: u32, cfg: &Config) -> Result<Vec<IterProfile>> {
    (0..=n_max).map(|n| profile_direct(f, g, n, cfg)).collect()
}

/// Multiplicity bounds for a generic pair: `p^(n h) <= e(n) <= E(n)`,
/// `E(n) <= E_f sqrt(D / (D - 1)) kappa^n` and `E(n) <= sqrt(2) E_f kappa^n`
/// with `kappa^2 = D (D - 1)` and `E_f` the largest multiplicity in `f`.
pub fn check_multiplicity_bounds(f: &Poly, g: &Poly, n_max: u32, cfg: &Config) -> Result<CheckReport> {
    let red = require_generic(f, g)?;
    let mut report = CheckReport::new("multiplicity", inputs(f, g, n_max));
    let p = f.field().characteristic();
    let dd = g.deg() as u64;
    let all = profiles(f, g, n_max, cfg)?;
    let ef = all[0].max_mult;
    for prof in &all {
        let n = prof.n;
        let pnh = big(p).pow(n * red.h);
        report.assert(format!("n={n}: p^(nh) <= e(n)"), &pnh, prof.min_mult, pnh <= big(prof.min_mult));
        report.assert(format!("n={n}: e(n) <= E(n)"), prof.min_mult, prof.max_mult, prof.min_mult <= prof.max_mult);
        let e2 = big(prof.max_mult).pow(2);
        let kappa2n = (big(dd) * big(dd - 1)).pow(n);
        let lhs = &e2 * big(dd - 1);
        let rhs = big(ef).pow(2) * big(dd) * &kappa2n;
        report.assert(format!("n={n}: E(n)^2 (D-1) <= E_f^2 D (D(D-1))^n"), &rhs, &lhs, lhs <= rhs);
        let rhs2 = big(2) * big(ef).pow(2) * &kappa2n;
        report.assert(format!("n={n}: E(n)^2 <= 2 E_f^2 (D(D-1))^n"), &rhs2, &e2, e2 <= rhs2);
    }
    if ef > 1 {
        report.note(format!("f is not squarefree; bounds are scaled by E_f = {ef}"));
    }
    Ok(report)
}

fn witness_for(f: &Poly, g: &Poly, cfg: &Config) -> Result<(DeltaWitness, PReduction)> {
    let red = require_generic(f, g)?;
    let (_, alpha) = root_field(f)?;
    Ok((find_delta_witness(g, &alpha, cfg)?, red))
}

/// Constructs the witness `gamma` and checks `Delta(n) d^i >= k d^n` and
/// `Delta(n) <= k d^n` for `n <= n_max`, plus `nu(g^(n) - gamma) = p^(n h)`
/// while `g^(n)` stays small.
pub fn delta_constant_witness(f: &Poly, g: &Poly, n_max: u32, cfg: &Config) -> Result<(DeltaWitness, CheckReport)> {
    let (w, red) = witness_for(f, g, cfg)?;
    let mut report = CheckReport::new("delta-witness", inputs(f, g, n_max));
    report.witness = Some(w.to_json());
    let chain = witness::chain_holds(g, &w)?;
    report.assert(format!("g^({})(gamma) = alpha", w.i), &w.alpha, if chain { "holds" } else { "fails" }, chain);
    let k = big(f.deg() as u64);
    let d = big(w.d);
    let di = w.inverse_constant();
    let p = f.field().characteristic();
    for prof in profiles(f, g, n_max, cfg)? {
        let n = prof.n;
        let kdn = &k * d.pow(n);
        let delta = big(prof.delta);
        report.assert(format!("n={n}: Delta(n) d^i >= k d^n"), &kdn, &delta * &di, &delta * &di >= kdn);
        report.assert(format!("n={n}: Delta(n) <= k d^n"), &kdn, &delta, delta <= kdn);
        let deg = (g.deg() as u128).checked_pow(n).unwrap_or(u128::MAX);
        if n >= 1 && deg <= 512 {
            let gl = g.embed_into(w.gamma.field())?;
            let shifted = &gl.iterate(n, cfg.degree_cap)? - &Poly::constant(&w.gamma);
            let (max, min) = nu_pair(&shifted);
            let pnh = p.pow(n * red.h);
            report.assert(format!("n={n}: nu(g^(n) - gamma) = p^(nh)"), pnh, max, max == pnh && min == pnh);
        }
    }
    Ok((w, report))
}

/// `2 Q^(M(n)/k) > C d^n` with `Q = q^k` and `C = d^(-i)` from the witness,
/// checked as `2 Q^(M(n)/k) d^i > d^n`.
pub fn check_max_degree_growth(f: &Poly, g: &Poly, n_max: u32, cfg: &Config) -> Result<CheckReport> {
    let (w, _) = witness_for(f, g, cfg)?;
    let mut report = CheckReport::new("max-degree", inputs(f, g, n_max));
    report.witness = Some(w.to_json());
    let k = f.deg() as u64;
    let big_q = big(f.field().order()).pow(k as u32);
    let d = big(w.d);
    let di = w.inverse_constant();
    for prof in profiles(f, g, n_max, cfg)? {
        let n = prof.n;
        let divisible = prof.max_deg % k == 0;
        report.assert(format!("n={n}: k | M(n)"), k, prof.max_deg, divisible);
        let lhs = big(2) * big_q.pow((prof.max_deg / k) as u32) * &di;
        let rhs = d.pow(n);
        report.assert(format!("n={n}: 2 Q^(M(n)/k) d^i > d^n"), &rhs, &lhs, lhs > rhs);
    }
    Ok(report)
}

/// The minimal degree `m(n)` for irreducible `f`: constant `k` when a root of
/// `f` is `g`-periodic, nondecreasing otherwise. Growth beyond the window is
/// reported, never asserted.
pub fn check_min_degree_equivalences(f: &Poly, g: &Poly, n_max: u32, cfg: &Config) -> Result<CheckReport> {
    if !f.is_irreducible()? {
        return Err(Error::NotIrreducible);
    }
    let mut report = CheckReport::new("min-degree", inputs(f, g, n_max));
    let k = f.deg() as u64;
    let periodic = has_periodic_root(f, g, cfg)?;
    let all = profiles(f, g, n_max, cfg)?;
    let ms: Vec<u64> = all.iter().map(|p| p.min_deg).collect();
    report.witness = Some(json!({ "periodic": periodic, "m": ms }));
    report.assert("m(0) = k", k, ms[0], ms[0] == k);
    for n in 1..ms.len() {
        if periodic {
            report.assert(format!("n={n}: m(n) = k"), k, ms[n], ms[n] == k);
        } else {
            report.assert(format!("n={n}: m(n) >= m(n-1)"), ms[n - 1], ms[n], ms[n] >= ms[n - 1]);
        }
    }
    if !periodic {
        match ms.iter().position(|&m| m > k) {
            Some(n) => report.note(format!("m first exceeds k at n = {n}")),
            None => report.note("m stays at k within the window; growth is not asserted"),
        }
    }
    Ok(report)
}

/// `max(N(n), A(n))^2 >= k C d^n`, which follows from `N A = Delta`.
pub fn check_remark_dichotomy(f: &Poly, g: &Poly, n_max: u32, cfg: &Config) -> Result<CheckReport> {
    let mut report = CheckReport::new("dichotomy", inputs(f, g, n_max));
    let (w, _) = match witness_for(f, g, cfg) {
        Err(Error::WitnessSearchExhausted(msg)) => {
            report.note(format!("skipped: witness search exhausted ({msg})"));
            return Ok(report);
        }
        other => other?,
    };
    report.witness = Some(w.to_json());
    let k = big(f.deg() as u64);
    let d = big(w.d);
    let di = w.inverse_constant();
    let mut squared_form = true;
    for prof in profiles(f, g, n_max, cfg)? {
        let n = prof.n;
        let (count, delta) = (big(prof.count), big(prof.delta));
        let kdn = &k * d.pow(n);
        // With A = Delta / N: compare max(N, A)^2 d^i against k d^n over the common denominator N^2.
        let (lhs, rhs) = if prof.count * prof.count >= prof.delta {
            (count.pow(2) * &di, kdn.clone())
        } else {
            (delta.pow(2) * &di, &kdn * count.pow(2))
        };
        report.assert(format!("n={n}: max(N, A)^2 >= k C d^n"), &rhs, &lhs, lhs >= rhs);
        // The stronger form max(N, A)^2 >= (k C)^2 d^n, reported only.
        let (l2, r2) = if prof.count * prof.count >= prof.delta {
            (count.pow(2) * di.pow(2), &k * &kdn)
        } else {
            (delta.pow(2) * di.pow(2), &k * &kdn * count.pow(2))
        };
        squared_form &= l2 >= r2;
    }
    report.note(format!(
        "max(N, A)^2 >= (k C)^2 d^n {} on this window",
        if squared_form { "also holds" } else { "does not hold" }
    ));
    Ok(report)
}

/// Orders recorded directly for each irreducible factor of `f(g^(n)(x))`,
/// keyed like the closed-form tags.
fn tagged_direct_census(f: &Poly, g: &Poly, n: u32, special: &SpecialG, cfg: &Config) -> Result<FactorCensus> {
    let composed = f.compose(&g.iterate(n, cfg.degree_cap)?)?;
    let mut rows = Vec::new();
    for (p, e) in &composed.factor_with(cfg)?.factors {
        let order = match special {
            SpecialG::Monomial(_) => OrderTag::Int(p.order()?),
            SpecialG::Linearized(_) => {
                let (_, beta) = root_field(p)?;
                OrderTag::FqOrder(fq_order(&beta, f.field())?)
            }
        };
        rows.push(crate::profile::CensusRow { degree: p.deg() as u64, multiplicity: *e, count: 1, order: Some(order) });
    }
    Ok(FactorCensus::new(rows))
}

/// The closed form for `g = x^D` or `g = L_u` against direct factorization,
/// for `0 <= n <= n_max`. For small compositions the order tags are checked
/// factor by factor as well.
pub fn check_closed_forms(f: &Poly, special: &SpecialG, n_max: u32, cfg: &Config) -> Result<CheckReport> {
    let g = special.to_poly(f.field())?;
    let mut report = CheckReport::new("closed-form", inputs(f, &g, n_max));
    let irreducible = f.is_irreducible()?;
    for n in 0..=n_max {
        let closed = closed_form_profile(f, special, n)?;
        let direct = profile_direct(f, &g, n, cfg)?;
        let same = closed.same_values(&direct);
        report.assert(format!("n={n}: census matches"), closed.census.digest(), direct.census.digest(), same);
        let tagged = closed.census.rows.iter().all(|r| r.order.is_some());
        if tagged && closed.total_degree() <= 200 {
            let truth = tagged_direct_census(f, &g, n, special, cfg)?;
            let closed_tags = closed.census.rows.iter().map(|r| (r.degree, &r.order, r.count)).collect::<Vec<_>>();
            let truth_tags = truth.rows.iter().map(|r| (r.degree, &r.order, r.count)).collect::<Vec<_>>();
            report.assert(
                format!("n={n}: order tags match"),
                truth.rows.len(),
                closed.census.rows.len(),
                closed_tags == truth_tags,
            );
        }
        if !irreducible {
            continue;
        }
        match special {
            SpecialG::Monomial(d) if f.coeff(0).value() != 0 => {
                let (d1, _) = split_int(f.order()?, *d);
                let rows = crate::arith::Factored::new(d1)
                    .powers
                    .iter()
                    .map(|&(_, e)| e as u64 * n as u64 + 1)
                    .product::<u64>();
                report.assert(
                    format!("n={n}: one row per divisor of d1^n"),
                    rows,
                    closed.census.rows.len(),
                    rows == closed.census.rows.len() as u64,
                );
            }
            SpecialG::Linearized(u) if closed.max_mult == 1 => {
                let (_, alpha) = root_field(f)?;
                let h = fq_order(&alpha, f.field())?;
                let expected = ord_x_mod(&(&u.monic().pow(n as u64) * &h))?;
                report.assert(
                    format!("n={n}: M(n) = ord(x, g^n h)"),
                    expected,
                    closed.max_deg,
                    expected == closed.max_deg,
                );
            }
            _ => {}
        }
    }
    Ok(report)
}

/// The construction `g = (x^q - x)^(q - 1)` for monic irreducible `f`.
pub fn check_exp_growth(f: &Poly, n_max: u32, cfg: &Config) -> Result<CheckReport> {
    let r = exp_growth_construction(f, n_max, cfg)?;
    let mut report = CheckReport::new("expgrowth", inputs(f, &r.g, n_max));
    report.assert("f(g) is separable", true, r.separable, r.separable);
    report.assert("f(g) is reducible", true, r.reducible, r.reducible);
    let degrees = r.factor_degrees.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    report.assert(
        "every factor degree is d k with d >= 2",
        format!("multiples of {} above it", 2 * r.k),
        &degrees,
        r.degrees_ok,
    );
    let next = r.next_f.as_ref().map_or("none".to_string(), Poly::to_string);
    report.assert("a factor has constant term outside {0, 1}", "some factor", &next, r.next_f.is_some());
    for &(n, count, max_deg) in &r.growth {
        let two_n = BigUint::one() << n;
        report.assert(format!("n={n}: N(n) >= 2^n"), &two_n, count, big(count) >= two_n);
        let bound = big(r.k) << n;
        report.assert(format!("n={n}: M(n) >= k 2^n"), &bound, max_deg, big(max_deg) >= bound);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn setup(p: u64, f: &str, g: &str) -> (Poly, Poly) {
        let field = Field::prime(p).unwrap();
        (Poly::parse(&field, f).unwrap(), Poly::parse(&field, g).unwrap())
    }

    #[test]
    fn multiplicity_bounds() {
        let cfg = Config::default();
        let (f, g) = setup(3, "x^2+1", "x^2");
        let r = check_multiplicity_bounds(&f, &g, 3, &cfg).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        let (f, g) = setup(2, "x+1", "x^4+x^2+1");
        let r = check_multiplicity_bounds(&f, &g, 2, &cfg).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        assert_eq!(r.assertions[8].bound, "4"); // p^(nh) at n = 2
        let (f, g) = setup(5, "x^2", "x^3");
        assert!(matches!(check_multiplicity_bounds(&f, &g, 1, &cfg), Err(Error::NotGeneric(_))));
    }

    #[test]
    fn delta_witness_reports() {
        let cfg = Config::default();
        let (f, g) = setup(3, "x+1", "x^2");
        let (w, r) = delta_constant_witness(&f, &g, 6, &cfg).unwrap();
        assert!(w.i <= 3);
        assert!(r.passed(), "{:?}", r.failures());
        let (f, g) = setup(3, "x^2+x+2", "x^2+1");
        let (_, r) = delta_constant_witness(&f, &g, 4, &cfg).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        let (f, g) = setup(2, "x^2+x+1", "x^2+1");
        assert!(matches!(delta_constant_witness(&f, &g, 1, &cfg), Err(Error::NotGeneric(_))));
    }

    #[test]
    fn degree_checks() {
        let cfg = Config::default();
        let (f, g) = setup(3, "x+1", "x^2");
        assert!(check_max_degree_growth(&f, &g, 5, &cfg).unwrap().passed());
        assert!(check_remark_dichotomy(&f, &g, 5, &cfg).unwrap().passed());
        let (f, g) = setup(7, "x-2", "x^2");
        let r = check_min_degree_equivalences(&f, &g, 5, &cfg).unwrap();
        assert!(r.passed());
        assert_eq!(r.witness.as_ref().unwrap()["m"], json!([1, 1, 1, 1, 1, 1]));
        let (f, g) = setup(3, "x+1", "x^2");
        let r = check_min_degree_equivalences(&f, &g, 4, &cfg).unwrap();
        assert!(r.passed());
        assert_eq!(r.witness.as_ref().unwrap()["m"], json!([1, 2, 2, 4, 8]));
        let (f, g) = setup(5, "x", "x^2");
        let r = check_min_degree_equivalences(&f, &g, 3, &cfg).unwrap();
        assert_eq!(r.witness.as_ref().unwrap()["periodic"], json!(true));
        assert!(r.passed());
    }

    #[test]
    fn closed_form_checks() {
        let cfg = Config::default();
        let f3 = Field::prime(3).unwrap();
        let f = Poly::parse(&f3, "x+1").unwrap();
        let r = check_closed_forms(&f, &SpecialG::Monomial(2), 2, &cfg).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        let f2 = Field::prime(2).unwrap();
        let f = Poly::parse(&f2, "x^2+x+1").unwrap();
        let u = Poly::parse(&f2, "x+1").unwrap();
        let r = check_closed_forms(&f, &SpecialG::Linearized(u), 2, &cfg).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
    }

    #[test]
    fn exp_growth_report() {
        let f3 = Field::prime(3).unwrap();
        let f = Poly::parse(&f3, "x^2+x+2").unwrap();
        let r = check_exp_growth(&f, 2, &Config::default()).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
    }
}
