//! Index calculus in F_p^*: θ(q) is the discrete log of q to base g, mod ℓ.

use std::collections::BTreeMap;

use rand::Rng;

use super::relation::{solve_linear_mod_ell, FactorBase, Relation};
use crate::arith::dlog::{bsgs_dlog, MulGroup};
use crate::arith::modular::{inv_mod, is_generator, is_prime, mul_mod, pow_mod};
use crate::arith::smooth::factor_over;
use crate::error::{Error, Result};
use crate::exec::{stream_rng, Exec};

const DESCENT_STREAM: u64 = 1 << 40;

/// Attempts evaluated per parallel block during relation search.
const BLOCK: u64 = 2048;

#[derive(Debug, Clone, Copy)]
pub struct IndexCalculusParams {
    pub p: u64,
    pub ell: u64,
    pub g: u64,
    pub bound: u64,
    pub seed: u64,
}

impl IndexCalculusParams {
    fn validate(&self) -> Result<()> {
        let IndexCalculusParams { p, ell, g, bound, .. } = *self;
        if !is_prime(p) || !is_prime(ell) || (p - 1) % ell != 0 {
            return Err(Error::BadInput(format!("need primes with ℓ | p-1, got p={p}, ℓ={ell}")));
        }
        if !is_generator(g, p) {
            return Err(Error::BadInput(format!("{g} does not generate F_{p}^*")));
        }
        if bound < 2 || bound >= p {
            return Err(Error::BadInput(format!("bound {bound} must lie in [2, p)")));
        }
        Ok(())
    }
}

/// θ(x) = log_g(x) mod ℓ, computed inside the order-ℓ quotient.
pub fn theta(p: u64, ell: u64, g: u64, x: u64) -> Result<u64> {
    if x.is_multiple_of(p) {
        return Err(Error::NotAUnit { x: x.to_string(), modulus: p });
    }
    let e = (p - 1) / ell;
    bsgs_dlog(&MulGroup { p }, &pow_mod(g, e, p), &pow_mod(x, e, p), ell)
}

fn relation_at(params: &IndexCalculusParams, base: &[u64], attempt: u64) -> Option<(u64, Relation<u64>)> {
    let IndexCalculusParams { p, ell, g, seed, .. } = *params;
    let r = stream_rng(seed, attempt).gen_range(1..p - 1);
    let x = pow_mod(g, r, p);
    let fac = factor_over(x as u128, base).ok()?;
    let rel = Relation::new(fac.into_iter().map(|(q, e)| (q, e as u64)), r, ell);
    (!rel.is_trivial()).then_some((r, rel))
}

/// `count` distinct relations from B-smooth powers g^r, in attempt order.
pub fn collect_relations(
    params: &IndexCalculusParams,
    base: &FactorBase<u64>,
    count: usize,
    exec: Exec,
) -> Result<Vec<Relation<u64>>> {
    params.validate()?;
    let budget = 10_000 * count.max(1) as u64;
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::with_capacity(count);
    let mut lo = 0;
    while out.len() < count {
        if lo >= budget {
            return Err(Error::BudgetExhausted { attempts: lo, what: "smooth relations".into() });
        }
        let hi = (lo + BLOCK).min(budget);
        for (r, rel) in exec.map_range(lo, hi, |i| relation_at(params, &base.entries, i)).into_iter().flatten() {
            if out.len() < count && seen.insert(r) {
                out.push(rel);
            }
        }
        lo = hi;
    }
    Ok(out)
}

/// log_g(a) mod ℓ by relation collection, elimination and one smooth
/// descent step a·g^s. The answer is checked against the ℓ-th power map.
pub fn index_calculus_dlog(params: &IndexCalculusParams, a: u64, exec: Exec) -> Result<u64> {
    params.validate()?;
    let IndexCalculusParams { p, ell, g, bound, seed } = *params;
    let a = a % p;
    if a == 0 {
        return Err(Error::NotAUnit { x: "0".into(), modulus: p });
    }
    let base = FactorBase::primes(bound);
    // distinct exponents r ∈ [1, p-1) cap the number of relations
    let max_relations = (p - 2) as usize;
    let mut count = (base.len() + 10).min(max_relations);
    let mut relations = Vec::new();
    let mut attempts_left = 8;
    let values = loop {
        if relations.len() < count {
            relations = collect_relations(params, &base, count, exec)?;
        }
        let solved = solve_linear_mod_ell(&relations, &[], ell)?;
        if solved.values.len() == base.len() || attempts_left == 0 || count == max_relations {
            break solved.values;
        }
        attempts_left -= 1;
        count = (count + base.len() / 2 + 10).min(max_relations);
    };
    let known: Vec<u64> = base.entries.iter().copied().filter(|q| values.contains_key(q)).collect();
    let descent = |j: u64| {
        let s = stream_rng(seed ^ DESCENT_STREAM, j).gen_range(0..p - 1);
        let x = mul_mod(a, pow_mod(g, s, p), p);
        let fac = factor_over(x as u128, &known).ok()?;
        Some((s, fac))
    };
    let budget = 10_000 * base.len().max(1) as u64;
    let (_, (s, fac)) = exec
        .find_first(0, budget, BLOCK, descent)
        .ok_or(Error::BudgetExhausted { attempts: budget, what: "smooth descent".into() })?;
    let sum = fac.iter().fold(0u64, |acc, (q, e)| (acc + (*e as u64 % ell) * values[q]) % ell);
    let m = (sum + ell - s % ell) % ell;
    let e = (p - 1) / ell;
    if pow_mod(a, e, p) != pow_mod(pow_mod(g, e, p), m, p) {
        return Err(Error::VerificationFailed(format!("log of {a} mod {ell}")));
    }
    Ok(m)
}

/// Where a local character pairing is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Site {
    /// The prime p, where the character is ramified.
    P,
    /// An unramified prime q ≠ p.
    Prime(u64),
}

/// Local pairing of the degree-ℓ character of conductor p with the rational
/// `a = Π q^e`, normalized so that the pairing with g at p is 1.
pub fn rational_character_pairing(p: u64, ell: u64, g: u64, site: Site, a: &[(u64, i64)]) -> Result<u64> {
    let mut support: BTreeMap<u64, i64> = BTreeMap::new();
    for &(q, e) in a {
        if !is_prime(q) {
            return Err(Error::BadSupport(format!("{q} is not prime")));
        }
        *support.entry(q).or_insert(0) += e;
    }
    support.retain(|_, e| *e != 0);
    match site {
        Site::P => {
            if support.contains_key(&p) {
                return Err(Error::BadSupport(format!("{p} divides the argument at site p")));
            }
            let mut x = 1u64;
            for (&q, &e) in &support {
                let base = if e >= 0 { q % p } else { inv_mod(q % p, p).expect("q ≠ p") };
                x = mul_mod(x, pow_mod(base, e.unsigned_abs(), p), p);
            }
            theta(p, ell, g, x)
        }
        Site::Prime(q) => {
            if q == p || !is_prime(q) {
                return Err(Error::BadSupport(format!("site {q} is not a prime other than p")));
            }
            let v = support.get(&q).copied().unwrap_or(0);
            let t = theta(p, ell, g, q)?;
            let prod = (v.rem_euclid(ell as i64) as u64 * t) % ell;
            Ok((ell - prod) % ell)
        }
    }
}
