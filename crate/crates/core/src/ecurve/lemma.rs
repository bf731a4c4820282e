//! F_ℓ-dimension of H¹(K_w, E)[ℓ] at degree-one places of good reduction.

use super::fp::ec_group_order;
use super::RationalCurve;
use crate::error::{Error, Result};
use crate::exec::Exec;

/// 1 or 0 at a good degree-one place over `q`; the case ℓ² | #Ẽ(F_q) and
/// the anomalous case at q = ℓ fall outside the formula.
pub fn h1_local_dim(curve: &RationalCurve, q: u64, ell: u64) -> Result<u32> {
    let reduced = curve
        .reduce(q)
        .map_err(|_| Error::OutOfScope(format!("bad reduction at {q}")))?;
    let n = ec_group_order(&reduced, Exec::Sequential);
    if q == ell {
        return if n.is_multiple_of(ell) {
            Err(Error::OutOfScope(format!("{ell} divides #E(F_{ell}) = {n}")))
        } else {
            Ok(1)
        };
    }
    if n.is_multiple_of(ell * ell) {
        return Err(Error::OutOfScope(format!("{ell}² divides #E(F_{q}) = {n}")));
    }
    Ok(u32::from(n.is_multiple_of(ell)))
}

/// Checkable proxy for E(K_w)/ℓ = 0 at a bad place: ℓ ∤ (Nw - 1) and ℓ
/// does not divide the discriminant valuation.
pub fn bad_place_assumption_holds(curve: &RationalCurve, q: u64, ell: u64) -> bool {
    !(q - 1).is_multiple_of(ell) && !(curve.discriminant_valuation(q) as u64).is_multiple_of(ell)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ecurve::{ell_torsion_count, FpCurve};

    #[test]
    fn lemma_examples() {
        let e = RationalCurve::new(0, 3).unwrap();
        // #E(F_13) for y² = x³ + 3
        let n13 = ec_group_order(&FpCurve::new(13, 0, 3).unwrap(), Exec::Sequential);
        assert_ne!(n13 % 13, 0);
        assert_eq!(h1_local_dim(&e, 13, 13).unwrap(), 1);
        assert_eq!(h1_local_dim(&e, 7, 13).unwrap(), 1);
        assert_eq!(h1_local_dim(&e, 11, 13).unwrap(), 0);
        assert!(matches!(h1_local_dim(&e, 3, 13), Err(Error::OutOfScope(_))));
    }

    #[test]
    fn matches_torsion_enumeration() {
        let e = RationalCurve::new(-1, 1).unwrap();
        for ell in [3u64, 5, 7] {
            for q in crate::arith::modular::primes_up_to(200) {
                let Ok(fp) = e.reduce(q) else { continue };
                let tors = ell_torsion_count(&fp, ell);
                match h1_local_dim(&e, q, ell) {
                    Ok(dim) if q != ell => assert_eq!(u64::from(dim) == 1, tors == ell, "q = {q}, ℓ = {ell}"),
                    Ok(dim) => assert_eq!((dim, tors), (1, 1)),
                    Err(_) => assert!(tors >= ell * ell || (q == ell && tors > 1) || fp_order_sq(&fp, ell)),
                }
            }
        }
    }

    fn fp_order_sq(c: &FpCurve, ell: u64) -> bool {
        ec_group_order(c, Exec::Sequential).is_multiple_of(ell * ell)
    }
}
