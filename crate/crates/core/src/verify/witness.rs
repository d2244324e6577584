//! Construction of an element `gamma` in the backward orbit of `alpha`
//! whose iterated preimage polynomials `g^(n)(x) - gamma` have every root of
//! multiplicity exactly `p^(n h)`.

use num_bigint::BigUint;
use serde_json::json;

use crate::classify::p_reduction;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::poly::Poly;
use crate::profile::{is_g_periodic, lift};

/// Steps allowed when following the orbit of a critical point of `G`.
const ORBIT_CAP: u64 = 1 << 20;

/// A witness `gamma` with `g^(i)(gamma) = alpha`, found through a
/// non-periodic `lambda` with `g^(j)(lambda) = alpha` and `gamma` a root of
/// `g^(M)(x) - lambda`, so `i = j + M`. The constant is `C = d^(-i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaWitness {
    pub alpha: FieldElement,
    pub lambda: FieldElement,
    pub j: u32,
    pub m: u32,
    pub gamma: FieldElement,
    pub i: u32,
    /// Degree of the `p`-reduction of `g`.
    pub d: u64,
}

impl DeltaWitness {
    /// `d^i`, the reciprocal of the constant `C`.
    pub fn inverse_constant(&self) -> BigUint {
        BigUint::from(self.d).pow(self.i)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "alpha": self.alpha.to_string(),
            "lambda": self.lambda.to_string(),
            "j": self.j,
            "M": self.m,
            "gamma": self.gamma.to_string(),
            "gamma_field": self.gamma.field().to_string(),
            "i": self.i,
            "C": format!("1/{}", self.inverse_constant()),
        })
    }
}

/// Smallest root of the irreducible `r` in the extension of its field that
/// splits it, or `None` when that extension is above the ambient cap.
fn root_of(r: &Poly, cfg: &Config) -> Result<Option<FieldElement>> {
    let field = r.field();
    if field.degree() as u64 * r.deg() as u64 > cfg.ambient_cap as u64 {
        return Ok(None);
    }
    let ext = field.extend(r.deg() as u32)?;
    Ok(r.embed_into(&ext)?.roots()?.into_iter().next())
}

/// A non-periodic `lambda` with `g^(j)(lambda) = alpha` and `j >= 1`,
/// searched level by level through the backward orbit of `alpha`. At most
/// one root of each `g(x) - beta` is periodic, so only periodic elements are
/// expanded further.
fn nonperiodic_preimage(g: &Poly, alpha: &FieldElement, cfg: &Config) -> Result<(FieldElement, u32)> {
    let q = g.field().order();
    let j_cap = q.saturating_pow(alpha.field().degree()).min(u32::MAX as u64) as u32;
    let mut frontier = vec![alpha.clone()];
    let mut capped = false;
    for j in 1..=j_cap {
        let mut next = Vec::new();
        for beta in &frontier {
            let shifted = &g.embed_into(beta.field())? - &Poly::constant(beta);
            for (r, _) in shifted.factor_with(cfg)?.factors {
                let Some(root) = root_of(&r, cfg)? else {
                    capped = true;
                    continue;
                };
                if is_g_periodic(&root, g)?.is_none() {
                    return Ok((root, j));
                }
                next.push(root);
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Err(Error::WitnessSearchExhausted(if capped {
        format!("no non-periodic preimage within ambient degree {}", cfg.ambient_cap)
    } else {
        "every preimage of alpha is periodic".into()
    }))
}

/// `g(s) mod p`.
fn step_mod(g: &Poly, s: &Poly, p: &Poly) -> Result<Poly> {
    let mut acc = Poly::zero(p.field());
    for i in (0..g.coeffs().len()).rev() {
        acc = (&(&acc * s) + &Poly::constant(&g.coeff(i))).rem(p)?;
    }
    Ok(acc)
}

/// The step `m` at which the orbit of a root of the irreducible `p` under
/// `g` reaches `lambda`, if it ever does. `lambda` is not periodic, so it can
/// only occur before the orbit enters its cycle.
fn orbit_hit(g: &Poly, p: &Poly, lambda: &FieldElement) -> Result<Option<u32>> {
    let start = Poly::x(p.field()).rem(p)?;
    let target = Poly::constant(lambda);
    // Brent: cycle length `lam`, then tail length `mu`.
    let (mut power, mut lam) = (1u64, 1u64);
    let mut tortoise = start.clone();
    let mut hare = step_mod(g, &start, p)?;
    while tortoise != hare {
        if power == lam {
            tortoise = hare.clone();
            power *= 2;
            lam = 0;
        }
        hare = step_mod(g, &hare, p)?;
        lam += 1;
        if power > ORBIT_CAP {
            return Err(Error::WitnessSearchExhausted(format!("orbit longer than {ORBIT_CAP} steps")));
        }
    }
    let mut s = start;
    let mut ahead = s.clone();
    for _ in 0..lam {
        ahead = step_mod(g, &ahead, p)?;
    }
    let mut t = 0u32;
    while s != ahead {
        if s == target {
            return Ok(Some(t));
        }
        s = step_mod(g, &s, p)?;
        ahead = step_mod(g, &ahead, p)?;
        t += 1;
    }
    Ok(None)
}

/// Builds a [`DeltaWitness`] for `alpha` under `g`, which must not be of the
/// form `a x^(p^h) + b` or `a (x - alpha)^D + alpha`.
///
/// `M` is exact rather than searched: it is one more than the last step at
/// which the orbit of a root of `G'` meets `lambda`, or 0 when none does.
pub fn find_delta_witness(g: &Poly, alpha: &FieldElement, cfg: &Config) -> Result<DeltaWitness> {
    let red = p_reduction(g)?;
    if red.d < 2 {
        return Err(Error::NotGeneric("p-critical".into()));
    }
    let shifted = &g.embed_into(alpha.field())? - &Poly::constant(alpha);
    if shifted.squarefree_part()? == &Poly::x(alpha.field()) - &Poly::constant(alpha) {
        return Err(Error::NotGeneric("critical".into()));
    }
    let (lambda, j) = nonperiodic_preimage(g, alpha, cfg)?;
    let field = lambda.field().clone();
    let gl = g.embed_into(&field)?;
    let dg = red.reduced.derivative();
    let mut last_hit: Option<u32> = None;
    if !dg.is_constant() {
        for (p, _) in dg.embed_into(&field)?.factor_with(cfg)?.factors {
            if let Some(t) = orbit_hit(&gl, &p, &lambda)? {
                last_hit = Some(last_hit.map_or(t, |h| h.max(t)));
            }
        }
    }
    let m = last_hit.map_or(0, |t| t + 1);
    let gamma = if m == 0 {
        lambda.clone()
    } else {
        let target = &gl.iterate(m, cfg.degree_cap)? - &Poly::constant(&lambda);
        let smallest = target.factor_with(cfg)?.factors.into_iter().next().expect("nonconstant").0;
        root_of(&smallest, cfg)?.ok_or_else(|| {
            Error::WitnessSearchExhausted(format!("gamma needs an extension above degree {}", cfg.ambient_cap))
        })?
    };
    Ok(DeltaWitness { alpha: alpha.clone(), lambda, j, m, gamma, i: j + m, d: red.d as u64 })
}

/// Whether `g^(i)(gamma) = alpha`.
pub(crate) fn chain_holds(g: &Poly, w: &DeltaWitness) -> Result<bool> {
    let mut x = w.gamma.clone();
    for _ in 0..w.i {
        x = g.eval(&x)?;
    }
    Ok(x == lift(&w.alpha, x.field())?)
}
