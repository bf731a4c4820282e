use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use crate::arith::linalg::{solve_mod_ell, Solution};
use crate::arith::modular::primes_up_to;
use crate::error::{Error, Result};

/// `Σ coeff·unknown = constant` over F_ℓ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation<C> {
    /// Sorted by column, distinct, coefficients nonzero.
    terms: Vec<(C, u64)>,
    constant: u64,
}

impl<C: Ord + Clone> Relation<C> {
    /// Merges repeated columns and drops zero coefficients.
    pub fn new(terms: impl IntoIterator<Item = (C, u64)>, constant: u64, ell: u64) -> Self {
        let mut acc: BTreeMap<C, u64> = BTreeMap::new();
        for (c, v) in terms {
            let e = acc.entry(c).or_insert(0);
            *e = (*e + v % ell) % ell;
        }
        Relation { terms: acc.into_iter().filter(|(_, v)| *v != 0).collect(), constant: constant % ell }
    }

    pub fn terms(&self) -> &[(C, u64)] {
        &self.terms
    }

    pub fn constant(&self) -> u64 {
        self.constant
    }

    pub fn is_trivial(&self) -> bool {
        self.terms.is_empty() && self.constant == 0
    }

    /// Whether the relation holds under `values` (missing columns fail).
    pub fn holds(&self, values: &BTreeMap<C, u64>, ell: u64) -> bool {
        let mut s = 0u64;
        for (c, v) in &self.terms {
            match values.get(c) {
                Some(x) => s = (s + v * x) % ell,
                None => return false,
            }
        }
        s == self.constant
    }
}

/// Sorted, deduplicated prime factor base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorBase<T> {
    pub bound: u64,
    pub entries: Vec<T>,
}

impl FactorBase<u64> {
    pub fn primes(bound: u64) -> Self {
        FactorBase { bound, entries: primes_up_to(bound) }
    }
}

impl<T> FactorBase<T> {
    pub fn len(&self) -> usize {
        self.entries.len()
    }
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Values of the requested unknowns and the dimension of the solution space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment<C> {
    pub values: BTreeMap<C, u64>,
    pub nullity: usize,
}

/// Solves the system for `unknowns`. Columns outside `unknowns` still take
/// part in the elimination; values are returned for every column the
/// system pins down.
pub fn solve_linear_mod_ell<C: Ord + Clone + Debug>(
    relations: &[Relation<C>],
    unknowns: &[C],
    ell: u64,
) -> Result<Assignment<C>> {
    let cols: Vec<C> = relations
        .iter()
        .flat_map(|r| r.terms.iter().map(|(c, _)| c.clone()))
        .chain(unknowns.iter().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index: BTreeMap<&C, usize> = cols.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let rows: Vec<Vec<u64>> = relations
        .iter()
        .map(|r| {
            let mut row = vec![0u64; cols.len()];
            for (c, v) in &r.terms {
                row[index[c]] = *v;
            }
            row
        })
        .collect();
    let rhs: Vec<u64> = relations.iter().map(|r| r.constant).collect();
    let solved = match solve_mod_ell(&rows, &rhs, cols.len(), ell) {
        Solution::Inconsistent => return Err(Error::Inconsistent),
        Solution::Consistent(s) => s,
    };
    let nullity = solved.iter().filter(|v| v.is_none()).count();
    let undetermined: Vec<String> =
        unknowns.iter().filter(|u| solved[index[u]].is_none()).map(|u| format!("{u:?}")).collect();
    if !undetermined.is_empty() {
        return Err(Error::RankDeficient { undetermined });
    }
    let values = cols.into_iter().zip(solved).filter_map(|(c, v)| v.map(|v| (c, v))).collect();
    Ok(Assignment { values, nullity })
}
