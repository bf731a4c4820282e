//! Signature recovery by index calculus in the quadratic field.
//!
//! Every sampled β ≡ g at v that is a unit at u and has smooth norm gives
//! the reciprocity relation `1 + y_β·s + Σ e_w·x_w = 0` over F_ℓ, where x_w
//! is the unknown pairing value at a uniformizer of w.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, ToPrimitive};
use rand::Rng;

use super::instance::{y_at, CharSignatureInstance};
use super::reduce::{CharSignature, Provenance};
use crate::arith::modular::{isqrt_u128, primes_up_to};
use crate::arith::smooth::factor_over;
use crate::error::{Error, Result};
use crate::exec::{stream_rng, Exec};
use crate::indexcalc::{solve_linear_mod_ell, Relation};
use crate::quadfield::{embed, factor_principal_over, residue, split_places, Place, QuadInt};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SigColumn {
    /// The ramification signature s.
    Signature,
    /// Pairing value at a uniformizer of the place.
    Place(Place),
}

impl fmt::Display for SigColumn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SigColumn::Signature => write!(f, "s"),
            SigColumn::Place(w) => write!(f, "x{w}"),
        }
    }
}

/// Search parameters for the quadratic index calculus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignatureSearch {
    pub bound: u64,
    pub seed: u64,
    /// β = x + y√D with `1 <= y <= max_y`; `None` means max(p, 1024).
    pub max_y: Option<u64>,
    /// |x - y√D| stays below `height_cap · p`.
    pub height_cap: u64,
    /// Sampling budget per relation requested.
    pub attempts_per_relation: u64,
}

impl SignatureSearch {
    pub fn new(bound: u64, seed: u64) -> Self {
        SignatureSearch { bound, seed, max_y: None, height_cap: 4, attempts_per_relation: 2000 }
    }
}

const BLOCK: u64 = 1024;

struct Sampler<'a> {
    inst: &'a CharSignatureInstance,
    primes: Vec<u64>,
    search: SignatureSearch,
    /// Image of √D at v.
    sqrt_d_at_v: u64,
}

impl Sampler<'_> {
    /// β for attempt `i`: x + y√D ≡ g at v, with x within `height_cap·p`
    /// of y√D so that the conjugate of β stays small.
    fn beta(&self, i: u64) -> (i128, i128, QuadInt) {
        let inst = self.inst;
        let p = inst.p as i128;
        let mut rng = stream_rng(self.search.seed, i);
        let max_y = self.search.max_y.unwrap_or(inst.p.max(1024));
        let y = rng.gen_range(1..=max_y) as i128;
        let cap = self.search.height_cap as i128;
        let t = rng.gen_range(-cap..cap);
        let class = (inst.g as i128 - y * self.sqrt_d_at_v as i128).rem_euclid(p);
        let centre = isqrt_u128((y * y) as u128 * inst.field.radicand()) as i128;
        let x = centre - (centre - class).rem_euclid(p) + t * p;
        (x, y, inst.field.from_sqrt_coords(x, y))
    }

    fn relation(&self, i: u64) -> Option<((i128, i128), Relation<SigColumn>)> {
        let inst = self.inst;
        let k = &inst.field;
        let (x, y, beta) = self.beta(i);
        // cheap smoothness filter on the norm before any place bookkeeping
        let n = k.norm(&beta).abs();
        let smooth = match n.to_u128() {
            Some(n) => factor_over(n, &self.primes).is_ok(),
            None => false,
        };
        if !smooth || residue(k, &beta, &inst.u).ok()? == 0 {
            return None;
        }
        let fac = factor_principal_over(k, &beta, &self.primes).ok()?;
        debug_assert!(fac.iter().all(|(w, _)| *w != inst.v && *w != inst.u));
        let y_beta = y_at(k, &beta, &inst.u, inst.ell).ok()?;
        let terms = std::iter::once((SigColumn::Signature, y_beta))
            .chain(fac.into_iter().map(|(w, e)| (SigColumn::Place(w), e as u64)));
        Some(((x, y), Relation::new(terms, inst.ell - 1, inst.ell)))
    }
}

/// The first `count` distinct relations in attempt order.
pub fn signature_relations(
    inst: &CharSignatureInstance,
    search: SignatureSearch,
    count: usize,
    exec: Exec,
) -> Result<Vec<Relation<SigColumn>>> {
    let (out, attempts) = gather(inst, search, count, exec)?;
    if out.len() < count {
        let what = format!("smooth signature relations ({} of {count} found)", out.len());
        return Err(Error::BudgetExhausted { attempts, what });
    }
    Ok(out)
}

/// Up to `count` distinct relations within the attempt budget, with the
/// number of attempts spent.
fn gather(
    inst: &CharSignatureInstance,
    search: SignatureSearch,
    count: usize,
    exec: Exec,
) -> Result<(Vec<Relation<SigColumn>>, u64)> {
    if search.bound < 2 {
        return Err(Error::BadInput("factor base bound must be at least 2".into()));
    }
    let mut primes: BTreeSet<u64> = primes_up_to(search.bound).into_iter().collect();
    primes.insert(inst.p);
    primes.insert(inst.ell);
    let sqrt_d_at_v = embed(&inst.field, &inst.field.from_sqrt_coords(0, 1), &inst.v, 1)?.value();
    let sampler = Sampler { inst, primes: primes.into_iter().collect(), search, sqrt_d_at_v };
    let budget = search.attempts_per_relation * count.max(1) as u64;
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    let mut lo = 0;
    while out.len() < count && lo < budget {
        let hi = (lo + BLOCK).min(budget);
        for (key, rel) in exec.map_range(lo, hi, |i| sampler.relation(i)).into_iter().flatten() {
            if out.len() < count && seen.insert(key) {
                out.push(rel);
            }
        }
        lo = hi;
    }
    Ok((out, lo))
}

/// Number of places of norm at most `bound`, plus the two places off the
/// factor base that sampled elements may touch.
fn column_estimate(inst: &CharSignatureInstance, bound: u64) -> usize {
    let places: usize = primes_up_to(bound)
        .into_iter()
        .map(|q| split_places(q, &inst.field).len())
        .sum();
    places + 3
}

/// s by solving the relation system; requires the conditions to hold.
pub fn signature_index_calculus(
    inst: &CharSignatureInstance,
    search: SignatureSearch,
    exec: Exec,
) -> Result<CharSignature> {
    if search.bound < 2 {
        return Err(Error::BadInput("factor base bound must be at least 2".into()));
    }
    if !inst.conditions.all_hold() {
        return Err(Error::ConditionsFailed(inst.conditions.failures().join("; ")));
    }
    let ell = inst.ell;
    let mut count = column_estimate(inst, search.bound) + 10;
    let mut last_err = None;
    for _ in 0..4 {
        // only s must be determined, so a short system may already suffice
        let (relations, attempts) = gather(inst, search, count, exec)?;
        let found = relations.len();
        match solve_linear_mod_ell(&relations, &[SigColumn::Signature], ell) {
            Ok(assign) => {
                let s = assign.values[&SigColumn::Signature];
                if s == 0 {
                    return Err(Error::VerificationFailed("signature solved to zero".into()));
                }
                return Ok(CharSignature { s, provenance: Provenance::IndexCalculus, m: None, y: inst.y()? });
            }
            Err(Error::RankDeficient { .. }) if found < count => {
                let what = format!("smooth signature relations ({found} of {count} found, s undetermined)");
                return Err(Error::BudgetExhausted { attempts, what });
            }
            Err(e @ Error::RankDeficient { .. }) => last_err = Some(e),
            Err(e) => return Err(e),
        }
        count *= 2;
    }
    Err(last_err.expect("at least one round"))
}
