//! Finite places of K, their completions at split primes, and factorization
//! of principal ideals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{QuadInt, RealQuadField};
use crate::arith::modular::{inv_mod, legendre, mul_mod, primes_up_to, reduce_big, sqrt_mod_prime};
use crate::arith::padic::{hensel_sqrt, PadicApprox};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

/// A finite place of K over the rational prime `prime`.
///
/// At an odd split prime `root_label` is the residue of √D in the
/// completion; over 2 it is the residue of ω. The place whose label lies in
/// `[1, (q-1)/2]` (label 0 over 2) is listed first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Place {
    pub prime: u64,
    pub splitting: Splitting,
    pub root_label: Option<u64>,
}

impl Place {
    pub fn split(prime: u64, root_label: u64) -> Self {
        Place { prime, splitting: Splitting::Split, root_label: Some(root_label) }
    }

    pub fn is_split(&self) -> bool {
        self.splitting == Splitting::Split
    }

    pub fn residue_degree(&self) -> u32 {
        if self.splitting == Splitting::Inert {
            2
        } else {
            1
        }
    }

    /// The other place over the same prime; itself when not split.
    pub fn conjugate(&self) -> Place {
        match (self.splitting, self.root_label) {
            (Splitting::Split, Some(r)) if self.prime == 2 => Place::split(2, 1 - r),
            (Splitting::Split, Some(r)) => Place::split(self.prime, self.prime - r),
            _ => *self,
        }
    }

    /// An element of valuation one at this place.
    pub fn uniformizer(&self, k: &RealQuadField) -> QuadInt {
        match self.splitting {
            Splitting::Ramified if self.prime == 2 && k.radicand() % 4 == 3 => QuadInt::new(1, 1),
            Splitting::Ramified => k.from_sqrt_coords(0, 1),
            _ => QuadInt::rational(self.prime),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.root_label {
            Some(r) => write!(f, "P({}, {})", self.prime, r),
            None => write!(f, "P({})", self.prime),
        }
    }
}

/// The places of K over the prime `q`.
pub fn split_places(q: u64, k: &RealQuadField) -> Vec<Place> {
    let d = k.radicand();
    let single = |splitting| vec![Place { prime: q, splitting, root_label: None }];
    if q == 2 {
        return match d % 8 {
            1 => vec![Place::split(2, 0), Place::split(2, 1)],
            5 => single(Splitting::Inert),
            _ => single(Splitting::Ramified),
        };
    }
    let dq = (d % q as u128) as u64;
    match legendre(dq, q) {
        0 => single(Splitting::Ramified),
        -1 => single(Splitting::Inert),
        _ => {
            let mut r = sqrt_mod_prime(dq, q).expect("residue");
            if r > (q - 1) / 2 {
                r = q - r;
            }
            vec![Place::split(q, r), Place::split(q, q - r)]
        }
    }
}

/// Image of ω in Z/q^k at the split place `w`.
fn omega_image(k: &RealQuadField, w: &Place, prec: u32) -> Result<PadicApprox> {
    let label = match (w.splitting, w.root_label) {
        (Splitting::Split, Some(r)) => r,
        _ => return Err(Error::BadInput(format!("{w} is not a split place"))),
    };
    let q = w.prime;
    if q == 2 {
        // root of t² - t - (D-1)/4 lifted from the label
        let m = 1u64
            .checked_shl(prec)
            .filter(|&m| prec < 63 && m > 0)
            .ok_or(Error::PrecisionLoss { prime: 2, precision: prec })?;
        let c = ((k.radicand() - 1) / 4 % m as u128) as u64;
        let mut t = label;
        for _ in 0..prec {
            let f = (mul_mod(t, t, m) + 2 * m - t - c) % m;
            let df = (2 * t + m - 1) % m;
            t = (t + m - mul_mod(f, inv_mod(df, m).expect("odd derivative"), m)) % m;
        }
        return PadicApprox::new(t as i128, 2, prec);
    }
    let d = k.radicand() as i128;
    let mut s = hensel_sqrt(d, q, prec)?;
    if s.value() % q != label {
        s = s.neg();
    }
    if k.omega_is_half() {
        let half = PadicApprox::new(2, q, prec)?.inverse()?;
        Ok(s.add(&PadicApprox::new(1, q, prec)?).mul(&half))
    } else {
        Ok(s)
    }
}

/// Image of `x` in Z_q / q^k under the completion at the split place `w`.
pub fn embed(k: &RealQuadField, x: &QuadInt, w: &Place, prec: u32) -> Result<PadicApprox> {
    let w_img = omega_image(k, w, prec)?;
    let m = w_img.modulus();
    let a = PadicApprox::new(reduce_big(&x.a, m) as i128, w.prime, prec)?;
    let b = PadicApprox::new(reduce_big(&x.b, m) as i128, w.prime, prec)?;
    Ok(a.add(&b.mul(&w_img)))
}

/// Residue of `x` in the residue field F_q of a degree-one place.
pub fn residue(k: &RealQuadField, x: &QuadInt, w: &Place) -> Result<u64> {
    let q = w.prime;
    match w.splitting {
        Splitting::Split => Ok(embed(k, x, w, 1)?.value()),
        Splitting::Ramified => {
            // √D ≡ 0 mod P, except over 2 with D ≡ 3 (mod 4) where √D ≡ 1
            let sqrt_d = if q == 2 && k.radicand() % 4 == 3 { 1 } else { 0 };
            let (sx, sy, den) = k.sqrt_coords(x);
            let num = (reduce_big(&sx, q) + mul_mod(reduce_big(&sy, q), sqrt_d, q)) % q;
            let inv = inv_mod(den as u64, q).ok_or(Error::BadInput("ramified place over 2 with half-integral ω".into()))?;
            Ok(mul_mod(num, inv, q))
        }
        Splitting::Inert => Err(Error::BadInput(format!("{w} has residue degree 2"))),
    }
}

fn valuation_big(n: &mut BigInt, q: u64) -> u32 {
    let qb = BigInt::from(q);
    let mut e = 0;
    loop {
        let (quot, rem) = n.div_rem(&qb);
        if !rem.is_zero() {
            return e;
        }
        *n = quot;
        e += 1;
    }
}

/// Prime factorization of the ideal (x), provided |N(x)| has no prime
/// factor above `bound`.
pub fn factor_principal(k: &RealQuadField, x: &QuadInt, bound: u64) -> Result<Vec<(Place, u32)>> {
    factor_principal_over(k, x, &primes_up_to(bound))
}

/// Prime factorization of (x) when |N(x)| is supported on `primes`
/// (ascending).
pub fn factor_principal_over(k: &RealQuadField, x: &QuadInt, primes: &[u64]) -> Result<Vec<(Place, u32)>> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let mut n = k.norm(x).abs();
    let mut out = Vec::new();
    for &q in primes {
        if n.is_one() {
            break;
        }
        let e = valuation_big(&mut n, q);
        if e == 0 {
            continue;
        }
        let places = split_places(q, k);
        match places[0].splitting {
            Splitting::Ramified => out.push((places[0], e)),
            Splitting::Inert => {
                if !e.is_multiple_of(2) {
                    return Err(Error::VerificationFailed(format!("odd norm valuation at inert {q}")));
                }
                out.push((places[0], e / 2));
            }
            Splitting::Split => {
                // v_P(x) <= v_q(N x) = e, so precision e+1 sees it exactly
                let v1 = embed(k, x, &places[0], e + 1)?
                    .valuation()
                    .ok_or(Error::PrecisionLoss { prime: q, precision: e + 1 })?;
                if v1 > e {
                    return Err(Error::VerificationFailed(format!("valuation overflow at {q}")));
                }
                if v1 > 0 {
                    out.push((places[0], v1));
                }
                if e - v1 > 0 {
                    out.push((places[1], e - v1));
                }
            }
        }
    }
    if !n.is_one() {
        return Err(Error::NotSmooth { cofactor: n.to_string() });
    }
    Ok(out)
}

/// `true` when `x` is a unit at the split place `w`.
pub fn is_local_unit(k: &RealQuadField, x: &QuadInt, w: &Place) -> Result<bool> {
    Ok(residue(k, x, w)? != 0)
}

/// |N(x)| recomputed from a factorization.
pub fn norm_from_factorization(fac: &[(Place, u32)]) -> BigInt {
    fac.iter().fold(BigInt::one(), |acc, (w, e)| {
        acc * BigInt::from(w.prime).pow(e * w.residue_degree())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn splitting_examples() {
        let k2 = RealQuadField::new(2).unwrap();
        assert_eq!(split_places(5, &k2)[0].splitting, Splitting::Inert);
        assert_eq!(split_places(7, &k2), vec![Place::split(7, 3), Place::split(7, 4)]);
        assert_eq!(split_places(2, &k2)[0].splitting, Splitting::Ramified);
        let k17 = RealQuadField::new(17).unwrap();
        assert_eq!(split_places(2, &k17), vec![Place::split(2, 0), Place::split(2, 1)]);
        assert_eq!(split_places(17, &k17)[0].splitting, Splitting::Ramified);
    }

    #[test]
    fn embed_examples() {
        let k = RealQuadField::new(4226).unwrap();
        let v = Place::split(31, 14);
        assert_eq!(embed(&k, &QuadInt::new(65, 1), &v, 1).unwrap().value(), 17);
        let r = embed(&k, &QuadInt::rational(-40), &v, 2).unwrap();
        assert_eq!(r.value(), 961 - 40);
        let k2 = RealQuadField::new(2).unwrap();
        let w = Place::split(7, 3);
        assert_eq!(embed(&k2, &QuadInt::new(0, 1), &w, 2).unwrap().value(), 10);
        assert_eq!(embed(&k2, &QuadInt::new(0, 1), &w.conjugate(), 2).unwrap().value(), 39);
    }

    #[test]
    fn factorization_examples() {
        let k2 = RealQuadField::new(2).unwrap();
        assert!(factor_principal(&k2, &QuadInt::new(1, 1), 100).unwrap().is_empty());
        let r = factor_principal(&k2, &QuadInt::new(0, 1), 100).unwrap();
        assert_eq!(r, vec![(Place { prime: 2, splitting: Splitting::Ramified, root_label: None }, 1)]);
        assert_eq!(factor_principal(&k2, &QuadInt::new(3, 1), 100).unwrap(), vec![(Place::split(7, 4), 1)]);
        assert_eq!(factor_principal(&k2, &QuadInt::rational(5), 100).unwrap()[0].1, 1);
        assert!(matches!(factor_principal(&k2, &QuadInt::new(0, 0), 100), Err(Error::ZeroElement)));
        assert!(matches!(factor_principal(&k2, &QuadInt::rational(101), 100), Err(Error::NotSmooth { .. })));
    }

    #[test]
    fn dyadic_split_places() {
        let k = RealQuadField::new(17).unwrap();
        for x in [QuadInt::new(1, 1), QuadInt::new(2, 1), QuadInt::new(7, 3), QuadInt::new(-6, 8)] {
            let fac = factor_principal(&k, &x, 100).unwrap();
            assert_eq!(norm_from_factorization(&fac), k.norm(&x).abs());
            for (w, e) in fac.iter().filter(|(w, _)| w.prime == 2) {
                let v = embed(&k, &x, w, 8).unwrap().valuation();
                assert_eq!(v, Some(*e));
            }
        }
    }

    fn fields() -> impl Strategy<Value = u128> {
        prop::sample::select(vec![2u128, 3, 5, 6, 17, 41, 4226, 1_000_001])
    }

    proptest! {
        #[test]
        fn embed_is_a_ring_homomorphism(d in fields(), qi in 0usize..12, a1 in -10_000i64..10_000,
                                        b1 in -10_000i64..10_000, a2 in -10_000i64..10_000,
                                        b2 in -10_000i64..10_000, prec in 1u32..4) {
            let k = RealQuadField::new(d).unwrap();
            let q = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37][qi];
            let places = split_places(q, &k);
            prop_assume!(places[0].is_split());
            let (x, y) = (QuadInt::new(a1, b1), QuadInt::new(a2, b2));
            for w in &places {
                let ex = embed(&k, &x, w, prec).unwrap();
                let ey = embed(&k, &y, w, prec).unwrap();
                prop_assert_eq!(embed(&k, &k.mul(&x, &y), w, prec).unwrap(), ex.mul(&ey));
                prop_assert_eq!(embed(&k, &(&x + &y), w, prec).unwrap(), ex.add(&ey));
            }
            let n = PadicApprox::new(reduce_big(&k.norm(&x), places[0].prime.pow(prec)) as i128, q, prec).unwrap();
            let prod = embed(&k, &x, &places[0], prec).unwrap().mul(&embed(&k, &x, &places[1], prec).unwrap());
            prop_assert_eq!(prod, n);
        }

        #[test]
        fn factorization_recovers_norm(d in fields(), a in -3000i64..3000, b in -3000i64..3000) {
            let k = RealQuadField::new(d).unwrap();
            let x = QuadInt::new(a, b);
            prop_assume!(!x.is_zero());
            match factor_principal(&k, &x, 1000) {
                Ok(fac) => prop_assert_eq!(norm_from_factorization(&fac), k.norm(&x).abs()),
                Err(Error::NotSmooth { .. }) => {}
                Err(e) => prop_assert!(false, "{e}"),
            }
        }
    }
}
