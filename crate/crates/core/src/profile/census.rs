use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::poly::{ddf, squarefree_decomposition, Factorization, Poly};

/// The order attached to a group of factors by a closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderTag {
    /// The order `ord(factor)` of the factors.
    Int(u64),
    /// The `F_q`-order shared by the roots of the factors.
    FqOrder(Poly),
}

impl Ord for OrderTag {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (OrderTag::Int(a), OrderTag::Int(b)) => a.cmp(b),
            (OrderTag::Int(_), OrderTag::FqOrder(_)) => Ordering::Less,
            (OrderTag::FqOrder(_), OrderTag::Int(_)) => Ordering::Greater,
            (OrderTag::FqOrder(a), OrderTag::FqOrder(b)) => crate::poly::canonical_cmp(a, b),
        }
    }
}

impl PartialOrd for OrderTag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for OrderTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderTag::Int(e) => write!(f, "{e}"),
            OrderTag::FqOrder(h) => write!(f, "{h}"),
        }
    }
}

/// `count` distinct irreducible factors, each of the given degree and
/// multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    pub degree: u64,
    pub multiplicity: u64,
    pub count: u64,
    pub order: Option<OrderTag>,
}

impl CensusRow {
    fn key(&self) -> (u64, u64, Option<&OrderTag>) {
        (self.degree, self.multiplicity, self.order.as_ref())
    }
}

/// The factorization of a polynomial summarized by degree and multiplicity.
///
/// Rows are sorted by `(degree, multiplicity, order)` and rows with equal
/// keys are merged, so equal multisets give equal censuses.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FactorCensus {
    pub rows: Vec<CensusRow>,
}

impl FactorCensus {
    pub fn new(rows: Vec<CensusRow>) -> Self {
        let mut rows: Vec<CensusRow> = rows.into_iter().filter(|r| r.count > 0).collect();
        rows.sort_by(|a, b| a.key().cmp(&b.key()));
        let mut merged: Vec<CensusRow> = Vec::with_capacity(rows.len());
        for row in rows {
            match merged.last_mut() {
                Some(last) if last.key() == row.key() => last.count += row.count,
                _ => merged.push(row),
            }
        }
        FactorCensus { rows: merged }
    }

    pub fn from_factorization(fac: &Factorization) -> Self {
        FactorCensus::new(
            fac.factors
                .iter()
                .map(|(p, e)| CensusRow { degree: p.deg() as u64, multiplicity: *e, count: 1, order: None })
                .collect(),
        )
    }

    /// Census of a nonconstant polynomial from its squarefree and
    /// distinct-degree factorizations. No randomness is involved.
    pub fn of_poly(p: &Poly, cfg: &Config) -> Result<Self> {
        if p.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        if p.deg() > cfg.degree_cap {
            return Err(Error::DegreeOverflow { degree: p.deg() as u128, cap: cfg.degree_cap });
        }
        let mut rows = Vec::new();
        for (part, e) in squarefree_decomposition(&p.monic()) {
            for (d, block) in ddf(&part) {
                rows.push(CensusRow {
                    degree: d as u64,
                    multiplicity: e,
                    count: (block.deg() / d) as u64,
                    order: None,
                });
            }
        }
        Ok(FactorCensus::new(rows))
    }

    /// Counts by `(degree, multiplicity)`, ignoring order tags.
    pub fn shape(&self) -> BTreeMap<(u64, u64), u64> {
        let mut shape = BTreeMap::new();
        for r in &self.rows {
            *shape.entry((r.degree, r.multiplicity)).or_insert(0) += r.count;
        }
        shape
    }

    /// Compact text form of [`FactorCensus::shape`]: `degree:multiplicity:count`
    /// entries joined by spaces.
    pub fn digest(&self) -> String {
        self.shape().iter().map(|((d, m), c)| format!("{d}:{m}:{c}")).collect::<Vec<_>>().join(" ")
    }

    /// Census with all tags dropped.
    pub fn untagged(&self) -> Self {
        FactorCensus::new(self.rows.iter().map(|r| CensusRow { order: None, ..r.clone() }).collect())
    }

    pub fn scale_degrees(&self, k: u64) -> Self {
        FactorCensus::new(self.rows.iter().map(|r| CensusRow { degree: r.degree * k, ..r.clone() }).collect())
    }

    pub fn scale_multiplicities(&self, s: u64) -> Self {
        FactorCensus::new(
            self.rows.iter().map(|r| CensusRow { multiplicity: r.multiplicity * s, ..r.clone() }).collect(),
        )
    }

    /// Union of two censuses.
    pub fn merge(&self, other: &FactorCensus) -> Self {
        FactorCensus::new(self.rows.iter().chain(&other.rows).cloned().collect())
    }

    /// `sum(multiplicity * degree * count)`.
    pub fn total_degree(&self) -> u128 {
        self.rows.iter().map(|r| r.multiplicity as u128 * r.degree as u128 * r.count as u128).sum()
    }

    /// Number of distinct irreducible factors.
    pub fn factor_count(&self) -> u64 {
        self.rows.iter().map(|r| r.count).sum()
    }
}
