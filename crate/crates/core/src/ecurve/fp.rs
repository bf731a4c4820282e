//! Curves over prime fields.

use std::collections::HashMap;

use crate::arith::dlog::Group;
use crate::arith::modular::{add_mod, inv_mod, isqrt, legendre, mul_mod, sqrt_mod_prime, sub_mod};
use crate::error::{Error, Result};
use crate::exec::Exec;

/// Largest field size counted by enumeration; BSGS above.
pub const ENUMERATION_LIMIT: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FpPoint {
    Infinity,
    Affine { x: u64, y: u64 },
}

impl FpPoint {
    pub fn affine(x: u64, y: u64) -> Self {
        FpPoint::Affine { x, y }
    }
}

/// y² = x³ + ax + b over F_p, nonsingular, p odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpCurve {
    pub p: u64,
    pub a: u64,
    pub b: u64,
}

impl FpCurve {
    pub fn new(p: u64, a: u64, b: u64) -> Result<Self> {
        if p < 3 {
            return Err(Error::BadReduction(p));
        }
        let (a, b) = (a % p, b % p);
        let disc = add_mod(mul_mod(4, mul_mod(a, mul_mod(a, a, p), p), p), mul_mod(27, mul_mod(b, b, p), p), p);
        if disc == 0 {
            return Err(Error::Singular);
        }
        Ok(FpCurve { p, a, b })
    }

    /// x³ + ax + b.
    pub fn rhs(&self, x: u64) -> u64 {
        let p = self.p;
        add_mod(mul_mod(x, add_mod(mul_mod(x, x, p), self.a, p), p), self.b, p)
    }

    pub fn is_on_curve(&self, pt: &FpPoint) -> bool {
        match *pt {
            FpPoint::Infinity => true,
            FpPoint::Affine { x, y } => x < self.p && y < self.p && mul_mod(y, y, self.p) == self.rhs(x),
        }
    }

    pub fn neg(&self, pt: &FpPoint) -> FpPoint {
        match *pt {
            FpPoint::Infinity => FpPoint::Infinity,
            FpPoint::Affine { x, y } => FpPoint::affine(x, (self.p - y) % self.p),
        }
    }

    pub fn add(&self, p1: &FpPoint, p2: &FpPoint) -> FpPoint {
        let p = self.p;
        let (x1, y1, x2, y2) = match (*p1, *p2) {
            (FpPoint::Infinity, q) | (q, FpPoint::Infinity) => return q,
            (FpPoint::Affine { x: x1, y: y1 }, FpPoint::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let lambda = if x1 == x2 {
            if add_mod(y1, y2, p) == 0 {
                return FpPoint::Infinity;
            }
            let num = add_mod(mul_mod(3, mul_mod(x1, x1, p), p), self.a, p);
            mul_mod(num, inv_mod(mul_mod(2, y1, p), p).expect("y ≠ 0"), p)
        } else {
            mul_mod(sub_mod(y2, y1, p), inv_mod(sub_mod(x2, x1, p), p).expect("x1 ≠ x2"), p)
        };
        let x3 = sub_mod(sub_mod(mul_mod(lambda, lambda, p), x1, p), x2, p);
        let y3 = sub_mod(mul_mod(lambda, sub_mod(x1, x3, p), p), y1, p);
        FpPoint::affine(x3, y3)
    }

    pub fn scalar_mul(&self, n: u64, pt: &FpPoint) -> FpPoint {
        Group::scalar(self, pt, n)
    }

    /// A point with the given x-coordinate, if any (the smaller root y).
    pub fn lift_x(&self, x: u64) -> Option<FpPoint> {
        let r = self.rhs(x);
        let y = sqrt_mod_prime(r, self.p)?;
        Some(FpPoint::affine(x, y.min(self.p - y) % self.p))
    }

    /// Points with x = 0, 1, 2, … in order.
    pub fn points_by_x(&self) -> impl Iterator<Item = FpPoint> + '_ {
        (0..self.p).filter_map(|x| self.lift_x(x))
    }

    pub fn hasse_interval(&self) -> (u64, u64) {
        let p = self.p;
        let s = isqrt(4 * p);
        let width = if s * s == 4 * p { s } else { s + 1 };
        ((p + 1).saturating_sub(width), p + 1 + width)
    }
}

impl Group for FpCurve {
    type Elem = FpPoint;
    fn identity(&self) -> FpPoint {
        FpPoint::Infinity
    }
    fn op(&self, a: &FpPoint, b: &FpPoint) -> FpPoint {
        self.add(a, b)
    }
    fn neg(&self, a: &FpPoint) -> FpPoint {
        FpCurve::neg(self, a)
    }
}

fn count_by_enumeration(c: &FpCurve, exec: Exec) -> u64 {
    let p = c.p;
    1 + exec.sum_range(0, p, |x| match legendre(c.rhs(x), p) {
        0 => 1,
        1 => 2,
        _ => 0,
    })
}

/// Every N in [lo, hi] with N·P = O, by a baby-step giant-step sweep.
fn annihilators_in(c: &FpCurve, pt: &FpPoint, lo: u64, hi: u64) -> Vec<u64> {
    let width = hi - lo;
    let m = isqrt(width) + 1;
    let mut baby: HashMap<FpPoint, Vec<u64>> = HashMap::new();
    let mut cur = FpPoint::Infinity;
    for j in 0..m {
        baby.entry(cur).or_default().push(j);
        cur = c.add(&cur, pt);
    }
    let giant = c.neg(&cur);
    // k·P = -lo·P with k = i·m + j
    let mut target = c.neg(&c.scalar_mul(lo, pt));
    let mut out = Vec::new();
    for i in 0..=width / m {
        if let Some(js) = baby.get(&target) {
            out.extend(js.iter().map(|j| i * m + j).filter(|&k| k <= width).map(|k| lo + k));
        }
        target = c.add(&target, &giant);
    }
    out.sort_unstable();
    out
}

/// #E(F_q): enumeration for q ≤ 10⁴, otherwise BSGS over the Hasse interval
/// with enumeration as the fallback when the points tried leave ambiguity.
pub fn ec_group_order(c: &FpCurve, exec: Exec) -> u64 {
    if c.p <= ENUMERATION_LIMIT {
        return count_by_enumeration(c, exec);
    }
    let (lo, hi) = c.hasse_interval();
    let mut candidates: Option<Vec<u64>> = None;
    for pt in c.points_by_x().take(32) {
        let found = annihilators_in(c, &pt, lo, hi);
        candidates = Some(match candidates {
            None => found,
            Some(prev) => prev.into_iter().filter(|n| found.binary_search(n).is_ok()).collect(),
        });
        if candidates.as_ref().is_some_and(|v| v.len() == 1) {
            break;
        }
    }
    match candidates {
        Some(v) if v.len() == 1 => v[0],
        _ => count_by_enumeration(c, exec),
    }
}

/// Number of points P with ℓP = O, by enumerating the whole group.
pub fn ell_torsion_count(c: &FpCurve, ell: u64) -> u64 {
    let mut count = 1;
    for x in 0..c.p {
        let r = c.rhs(x);
        let ys: Vec<u64> = match sqrt_mod_prime(r, c.p) {
            Some(0) => vec![0],
            Some(y) => vec![y, c.p - y],
            None => vec![],
        };
        for y in ys {
            if c.scalar_mul(ell, &FpPoint::affine(x, y)) == FpPoint::Infinity {
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_examples() {
        let c = FpCurve::new(5, 0, 1).unwrap();
        assert_eq!(c.scalar_mul(2, &FpPoint::affine(2, 3)), FpPoint::affine(0, 1));
        assert_eq!(ec_group_order(&c, Exec::Sequential), 6);
        assert_eq!(ec_group_order(&FpCurve::new(5, 1, 0).unwrap(), Exec::Sequential), 4);
        assert_eq!(ec_group_order(&FpCurve::new(7, 0, 3).unwrap(), Exec::Sequential), 13);
        assert!(matches!(FpCurve::new(7, 0, 0), Err(Error::Singular)));
        let pt = FpPoint::affine(2, 3);
        assert_eq!(c.add(&pt, &FpPoint::Infinity), pt);
        assert_eq!(c.add(&pt, &c.neg(&pt)), FpPoint::Infinity);
    }

    #[test]
    fn bsgs_count_matches_enumeration() {
        for (p, a, b) in [(10_007u64, 1u64, 7u64), (10_009, 0, 5), (65_537, 3, 11), (100_003, 2, 0)] {
            let c = FpCurve::new(p, a, b).unwrap();
            let n = ec_group_order(&c, Exec::default());
            assert_eq!(n, count_by_enumeration(&c, Exec::default()), "p = {p}");
            let (lo, hi) = c.hasse_interval();
            assert!(lo <= n && n <= hi);
        }
    }

    #[test]
    fn torsion_count_on_prime_order_curve() {
        let c = FpCurve::new(7, 0, 3).unwrap();
        assert_eq!(ell_torsion_count(&c, 13), 13);
        assert_eq!(ell_torsion_count(&c, 5), 1);
    }

    proptest! {
        #[test]
        fn group_axioms(a in 0u64..1009, b in 1u64..1009, i in 0usize..50, j in 0usize..50, k in 0usize..50) {
            let Ok(c) = FpCurve::new(1009, a, b) else { return Ok(()) };
            let pts: Vec<FpPoint> = c.points_by_x().take(50).collect();
            prop_assume!(!pts.is_empty());
            let (p, q, r) = (pts[i % pts.len()], pts[j % pts.len()], pts[k % pts.len()]);
            prop_assert_eq!(c.add(&c.add(&p, &q), &r), c.add(&p, &c.add(&q, &r)));
            prop_assert_eq!(c.add(&p, &q), c.add(&q, &p));
            prop_assert_eq!(c.add(&p, &c.neg(&p)), FpPoint::Infinity);
            prop_assert!(c.is_on_curve(&c.add(&p, &q)));
            let n = ec_group_order(&c, Exec::Sequential);
            prop_assert_eq!(c.scalar_mul(n, &p), FpPoint::Infinity);
            let (lo, hi) = c.hasse_interval();
            prop_assert!(lo <= n && n <= hi);
        }
    }
}
