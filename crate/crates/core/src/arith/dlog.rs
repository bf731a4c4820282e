//! Generic baby-step giant-step discrete logarithms and ℓ-th power residue tests.

use std::collections::HashMap;
use std::hash::Hash;

use super::modular::{inv_mod, isqrt, mul_mod, pow_mod};
use crate::error::{Error, Result};

/// A finite abelian group presented through its operation table, written
/// additively.
pub trait Group {
    type Elem: Clone + Eq + Hash;

    fn identity(&self) -> Self::Elem;
    fn op(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    fn scalar(&self, a: &Self::Elem, mut n: u64) -> Self::Elem {
        let mut acc = self.identity();
        let mut base = a.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.op(&acc, &base);
            }
            base = self.op(&base, &base);
            n >>= 1;
        }
        acc
    }
}

/// The multiplicative group F_p^*.
#[derive(Debug, Clone, Copy)]
pub struct MulGroup {
    pub p: u64,
}

impl Group for MulGroup {
    type Elem = u64;

    fn identity(&self) -> u64 {
        1
    }
    fn op(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        inv_mod(*a, self.p).expect("nonzero element of F_p")
    }
    fn scalar(&self, a: &u64, n: u64) -> u64 {
        pow_mod(*a, n, self.p)
    }
}

/// Least `m >= 0` with `m * generator = target`, searching `m < group_order`.
pub fn bsgs_dlog<G: Group>(
    group: &G,
    generator: &G::Elem,
    target: &G::Elem,
    group_order: u64,
) -> Result<u64> {
    if group_order == 0 {
        return Err(Error::BadInput("group order must be positive".into()));
    }
    let steps = {
        let s = isqrt(group_order);
        if s * s < group_order {
            s + 1
        } else {
            s
        }
    };
    let mut baby: HashMap<G::Elem, u64> = HashMap::with_capacity(steps as usize);
    let mut cur = group.identity();
    for j in 0..steps {
        baby.entry(cur.clone()).or_insert(j);
        cur = group.op(&cur, generator);
    }
    // cur = steps * generator
    let giant = group.neg(&cur);
    let mut gamma = target.clone();
    for i in 0..=steps {
        if let Some(&j) = baby.get(&gamma) {
            let m = i * steps + j;
            if m < group_order {
                return Ok(m);
            }
        }
        gamma = group.op(&gamma, &giant);
    }
    Err(Error::NotInSubgroup)
}

/// Whether `a` is an ℓ-th power in F_p^*, i.e. `a^((p-1)/ℓ) = 1`.
pub fn ell_power_residue_test(a: u64, p: u64, ell: u64) -> Result<bool> {
    if ell == 0 || !(p - 1).is_multiple_of(ell) {
        return Err(Error::BadInput(format!("{ell} does not divide {p} - 1")));
    }
    if a.is_multiple_of(p) {
        return Err(Error::BadInput(format!("{p} divides {a}")));
    }
    Ok(pow_mod(a, (p - 1) / ell, p) == 1)
}
