//! Fundamental units from the period of a reduced quadratic irrational.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{QuadInt, RealQuadField};
use crate::arith::modular::isqrt_u128;
use crate::error::{Error, Result};

/// One period of the continued fraction of the reduced irrational
/// `x0 = (P0 + √D)/Q0` whose multiplier ring is the maximal order.
pub(crate) struct Period {
    pub p0: i128,
    pub q0: i128,
    pub quotients: Vec<u128>,
}

pub(crate) fn period(d: u128) -> Period {
    let s = isqrt_u128(d) as i128;
    let di = d as i128;
    let (p0, q0) = if d % 4 == 1 {
        // largest odd P0 <= √D
        (if s % 2 == 1 { s } else { s - 1 }, 2)
    } else {
        (s, 1)
    };
    let (mut p, mut q) = (p0, q0);
    let mut quotients = Vec::new();
    loop {
        let a = (p + s) / q;
        quotients.push(a as u128);
        let p_next = a * q - p;
        let q_next = (di - p_next * p_next) / q;
        debug_assert_eq!((di - p_next * p_next) % q, 0);
        p = p_next;
        q = q_next;
        if (p, q) == (p0, q0) {
            break;
        }
    }
    Period { p0, q0, quotients }
}

/// Sign of the norm of the fundamental unit, `(-1)^period`.
pub(crate) fn unit_norm(d: u128) -> i32 {
    if period(d).quotients.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub(crate) fn compute_fundamental_unit(d: u128) -> Result<(QuadInt, i32)> {
    let Period { p0, q0, quotients } = period(d);
    // convergent denominators, k_{-2} = 1, k_{-1} = 0
    let (mut k2, mut k1) = (BigInt::one(), BigInt::zero());
    for &a in &quotients {
        let k = BigInt::from(a) * &k1 + &k2;
        k2 = k1;
        k1 = k;
    }
    // unit = k_{r-1} * x0 + k_{r-2}, x0 = c + ω
    let c = if q0 == 2 { (p0 - 1) / 2 } else { p0 };
    let unit = QuadInt { a: &k1 * BigInt::from(c) + k2, b: k1 };
    let sign = if quotients.len() % 2 == 0 { 1 } else { -1 };
    let k = RealQuadField::new(d)?;
    if k.norm(&unit) != BigInt::from(sign) {
        return Err(Error::VerificationFailed(format!("unit of {k} has wrong norm")));
    }
    Ok((unit, sign))
}

/// Fundamental unit of Q(√d) and its norm.
pub fn fundamental_unit(d: u128) -> Result<(QuadInt, i32)> {
    RealQuadField::new(d)?.fundamental_unit()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fields() {
        assert_eq!(fundamental_unit(2).unwrap(), (QuadInt::new(1, 1), -1));
        assert_eq!(fundamental_unit(3).unwrap(), (QuadInt::new(2, 1), 1));
        assert_eq!(fundamental_unit(5).unwrap(), (QuadInt::new(0, 1), -1));
        // 5 + 2√6
        assert_eq!(fundamental_unit(6).unwrap(), (QuadInt::new(5, 2), 1));
        // (3 + √13)/2 = 1 + ω
        assert_eq!(fundamental_unit(13).unwrap(), (QuadInt::new(1, 1), -1));
        assert_eq!(fundamental_unit(23).unwrap(), (QuadInt::new(24, 5), 1));
    }

    /// Smallest unit > 1 by direct search over x + y√D with y ascending.
    fn brute_unit(d: u128) -> (BigInt, BigInt) {
        let half = d % 4 == 1;
        for y in 1u128.. {
            for sign in [-1i128, 1] {
                // x² - D y² = ±4 (half) or ±1
                let c = if half { 4i128 } else { 1 };
                let t = (d * y * y) as i128 + sign * c;
                if t <= 0 {
                    continue;
                }
                let x = isqrt_u128(t as u128);
                if x * x == t as u128 && (!half || (x + y).is_multiple_of(2)) {
                    return (BigInt::from(x), BigInt::from(y));
                }
            }
        }
        unreachable!()
    }

    #[test]
    fn matches_brute_force_search() {
        for d in [2u128, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 29, 31, 37, 41, 53, 57, 61, 67, 79] {
            let k = RealQuadField::new(d).unwrap();
            let (u, _) = k.fundamental_unit().unwrap();
            let (x, y, _) = k.sqrt_coords(&u);
            assert_eq!((x, y), brute_unit(d), "D = {d}");
        }
    }

    #[test]
    fn large_radicand_unit_has_unit_norm() {
        let k = RealQuadField::new(1_000_000_007).unwrap();
        let (u, n) = k.fundamental_unit().unwrap();
        assert_eq!(k.norm(&u), BigInt::from(n));
        assert!(k.to_f64(&u) > 1.0);
    }
}
