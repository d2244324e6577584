use super::FactorCensus;
use crate::arith;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::poly::{squarefree_decomposition, Poly};

/// A backward chain `(gamma_1, ..., gamma_n)` with `gamma_1 = alpha` and
/// `g(gamma_i) = gamma_(i-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreimageTuple {
    pub entries: Vec<FieldElement>,
}

impl PreimageTuple {
    fn new(g: &Poly, entries: Vec<FieldElement>) -> Result<Self> {
        for pair in entries.windows(2) {
            if g.eval(&pair[1])? != pair[0] {
                return Err(Error::HypothesisViolated("preimage chain is broken".into()));
            }
        }
        Ok(PreimageTuple { entries })
    }
}

/// The smallest extension of `field` over which every polynomial in `polys`
/// splits into linear factors, limited to absolute degree `cap`.
pub(crate) fn splitting_extension(field: &Field, polys: &[Poly], cfg: &Config) -> Result<Field> {
    let mut s = 1u64;
    for p in polys {
        if p.is_constant() {
            continue;
        }
        for row in FactorCensus::of_poly(p, cfg)?.rows {
            s = arith::lcm(s, row.degree).ok_or(Error::Overflow("splitting degree"))?;
        }
    }
    let needed = field.degree() as u64 * s;
    if needed > cfg.ambient_cap as u64 {
        return Err(Error::FieldCapExceeded { needed, cap: cfg.ambient_cap });
    }
    field.extend(s as u32)
}

/// Moves an element into an extension of its field.
pub(crate) fn lift(a: &FieldElement, target: &Field) -> Result<FieldElement> {
    if a.field().same(target) {
        return Ok(a.clone());
    }
    Ok(target.embedding_from(a.field())?.map(a))
}

/// Distinct roots of `g(x) - gamma` for each `gamma`, in one common extension
/// of the field of the `gammas` (which must all share a field).
pub(crate) fn preimages(g: &Poly, gammas: &[FieldElement], cfg: &Config) -> Result<(Field, Vec<Vec<FieldElement>>)> {
    let field = gammas[0].field().clone();
    let lifted = g.embed_into(&field)?;
    let shifted: Vec<Poly> = gammas.iter().map(|c| &lifted - &Poly::constant(c)).collect();
    let ambient = splitting_extension(&field, &shifted, cfg)?;
    let mut roots = Vec::with_capacity(shifted.len());
    for p in &shifted {
        roots.push(p.embed_into(&ambient)?.roots()?);
    }
    Ok((ambient, roots))
}

/// Every backward chain of length `n` starting at `alpha`. The ambient field
/// is extended as needed up to `cfg.ambient_cap`; `n = 0` yields the empty
/// chain.
pub fn preimage_tuples(g: &Poly, alpha: &FieldElement, n: u32, cfg: &Config) -> Result<Vec<PreimageTuple>> {
    if n == 0 {
        return Ok(vec![PreimageTuple { entries: Vec::new() }]);
    }
    let mut chains: Vec<Vec<FieldElement>> = vec![vec![alpha.clone()]];
    for _ in 1..n {
        let lasts: Vec<FieldElement> = chains.iter().map(|c| c.last().unwrap().clone()).collect();
        let (ambient, roots) = preimages(g, &lasts, cfg)?;
        let mut next = Vec::new();
        for (chain, rs) in chains.iter().zip(roots) {
            let lifted = chain.iter().map(|a| lift(a, &ambient)).collect::<Result<Vec<_>>>()?;
            for r in rs {
                let mut c = lifted.clone();
                c.push(r);
                next.push(c);
            }
        }
        chains = next;
    }
    chains.into_iter().map(|c| PreimageTuple::new(g, c)).collect()
}

/// Largest and smallest root multiplicity of a nonconstant polynomial.
pub(crate) fn nu_pair(p: &Poly) -> (u64, u64) {
    let parts = squarefree_decomposition(&p.monic());
    let max = parts.iter().map(|(_, e)| *e).max().unwrap_or(1);
    let min = parts.iter().map(|(_, e)| *e).min().unwrap_or(1);
    (max, min)
}

/// `(min over chains of prod nu*(g - l), max over chains of prod nu(g - l))`,
/// which sandwich `nu*` and `nu` of `g^(n)(x) - alpha`.
pub fn nu_bounds(g: &Poly, alpha: &FieldElement, n: u32, cfg: &Config) -> Result<(u64, u64)> {
    let tuples = preimage_tuples(g, alpha, n, cfg)?;
    let mut lower = u64::MAX;
    let mut upper = 0u64;
    for t in &tuples {
        let (mut hi, mut lo) = (1u64, 1u64);
        for l in &t.entries {
            let shifted = &g.embed_into(l.field())? - &Poly::constant(l);
            let (max, min) = nu_pair(&shifted);
            hi *= max;
            lo *= min;
        }
        lower = lower.min(lo);
        upper = upper.max(hi);
    }
    Ok((lower, upper))
}
