//! Fixed-precision q-adic integers, Hensel square roots and the
//! Teichmüller splitting of units modulo ℓ².

use std::fmt;

use serde::{Deserialize, Serialize};

use super::modular::{inv_mod, mul_mod, pow_mod, reduce_i128, sqrt_mod_prime};
use crate::error::{Error, Result};

/// An element of Z_q known modulo q^k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PadicApprox {
    prime: u64,
    precision: u32,
    value: u64,
    /// `None` when the value is zero to the working precision.
    valuation: Option<u32>,
}

fn checked_power(q: u64, k: u32) -> Result<u64> {
    let m = (q as u128).checked_pow(k).filter(|&m| m < (1u128 << 63));
    m.map(|m| m as u64)
        .ok_or_else(|| Error::BadInput(format!("{q}^{k} exceeds the word-sized modulus")))
}

impl PadicApprox {
    pub fn new(x: i128, prime: u64, precision: u32) -> Result<Self> {
        if precision == 0 {
            return Err(Error::BadInput("precision must be positive".into()));
        }
        let m = checked_power(prime, precision)?;
        Ok(Self::from_residue(reduce_i128(x, m), prime, precision, m))
    }

    fn from_residue(value: u64, prime: u64, precision: u32, modulus: u64) -> Self {
        debug_assert!(value < modulus);
        let valuation = if value == 0 {
            None
        } else {
            let mut v = 0;
            let mut t = value;
            while t.is_multiple_of(prime) {
                t /= prime;
                v += 1;
            }
            Some(v)
        };
        PadicApprox { prime, precision, value, valuation }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }
    pub fn precision(&self) -> u32 {
        self.precision
    }
    pub fn value(&self) -> u64 {
        self.value
    }
    pub fn valuation(&self) -> Option<u32> {
        self.valuation
    }
    pub fn modulus(&self) -> u64 {
        self.prime.pow(self.precision)
    }
    pub fn is_unit(&self) -> bool {
        self.valuation == Some(0)
    }

    fn same_ring(&self, other: &Self) {
        assert!(
            self.prime == other.prime && self.precision == other.precision,
            "mixing {}^{} with {}^{}",
            self.prime,
            self.precision,
            other.prime,
            other.precision
        );
    }

    fn with_value(&self, value: u64) -> Self {
        Self::from_residue(value, self.prime, self.precision, self.modulus())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_ring(other);
        let m = self.modulus();
        self.with_value(((self.value as u128 + other.value as u128) % m as u128) as u64)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let m = self.modulus();
        self.with_value((m - self.value) % m)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_ring(other);
        self.with_value(mul_mod(self.value, other.value, self.modulus()))
    }

    pub fn inverse(&self) -> Result<Self> {
        let m = self.modulus();
        inv_mod(self.value, m)
            .map(|v| self.with_value(v))
            .ok_or(Error::NotAUnit { x: self.value.to_string(), modulus: m })
    }

    /// Reduce to a lower precision.
    pub fn truncate(&self, precision: u32) -> Self {
        assert!(precision >= 1 && precision <= self.precision);
        let m = self.prime.pow(precision);
        Self::from_residue(self.value % m, self.prime, precision, m)
    }
}

impl fmt::Display for PadicApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {}^{})", self.value, self.prime, self.precision)
    }
}

/// Square root of `n` in Z_q to precision q^k.
///
/// The root returned is the one whose residue mod q lies in `[1, (q-1)/2]`.
pub fn hensel_sqrt(n: i128, q: u64, k: u32) -> Result<PadicApprox> {
    if q <= 2 {
        return Err(Error::BadInput(format!("hensel_sqrt needs an odd prime, got {q}")));
    }
    let m = checked_power(q, k)?;
    let n_mod_q = reduce_i128(n, q);
    if n_mod_q == 0 {
        return Err(Error::Ramified { n: n.to_string(), q });
    }
    let mut root = sqrt_mod_prime(n_mod_q, q).ok_or(Error::NonResidue { n: n.to_string(), q })?;
    if root > (q - 1) / 2 {
        root = q - root;
    }
    let target = reduce_i128(n, m);
    // Newton steps x <- x - (x^2 - n) / 2x, each doubling the correct digits.
    let mut x = root;
    let mut correct = 1u32;
    while correct < k {
        let fx = (mul_mod(x, x, m) as i128 - target as i128).rem_euclid(m as i128) as u64;
        let inv = inv_mod(mul_mod(2, x, m), m).expect("2x is a unit for odd q and q not dividing n");
        x = (x as i128 - mul_mod(fx, inv, m) as i128).rem_euclid(m as i128) as u64;
        correct *= 2;
    }
    Ok(PadicApprox::from_residue(x, q, k, m))
}

/// Decomposition `x = xi * (1 + y*ell) (mod ell^2)` with `xi^(ell-1) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TeichmullerDecomp {
    pub xi: u64,
    pub y: u64,
}

pub fn teichmuller(x: u64, ell: u64) -> Result<TeichmullerDecomp> {
    let m = ell * ell;
    let x = x % m;
    if x.is_multiple_of(ell) {
        return Err(Error::NotAUnit { x: x.to_string(), modulus: ell });
    }
    // ell-th powering kills the 1-unit part; at this precision one step
    // already lands on the fixed point.
    let mut xi = x;
    loop {
        let next = pow_mod(xi, ell, m);
        if next == xi {
            break;
        }
        xi = next;
    }
    let one_unit = mul_mod(x, inv_mod(xi, m).expect("xi is a unit"), m);
    debug_assert_eq!(one_unit % ell, 1);
    Ok(TeichmullerDecomp { xi, y: (one_unit - 1) / ell })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn hensel_examples() {
        assert_eq!(hensel_sqrt(1, 7, 3).unwrap().value(), 1);
        assert_eq!(hensel_sqrt(4, 5, 3).unwrap().value(), 2);
        assert_eq!(hensel_sqrt(2, 7, 2).unwrap().value(), 10);
        assert!(matches!(hensel_sqrt(3, 7, 2), Err(Error::NonResidue { .. })));
        assert!(matches!(hensel_sqrt(14, 7, 2), Err(Error::Ramified { .. })));
    }

    #[test]
    fn teichmuller_examples() {
        assert_eq!(teichmuller(1, 7).unwrap(), TeichmullerDecomp { xi: 1, y: 0 });
        assert_eq!(teichmuller(8, 7).unwrap(), TeichmullerDecomp { xi: 1, y: 1 });
        assert_eq!(teichmuller(2, 5).unwrap(), TeichmullerDecomp { xi: 7, y: 2 });
        assert!(teichmuller(10, 5).is_err());
    }

    #[test]
    fn padic_valuation_bookkeeping() {
        let x = PadicApprox::new(50, 5, 3).unwrap();
        assert_eq!(x.valuation(), Some(2));
        assert_eq!(PadicApprox::new(125, 5, 3).unwrap().valuation(), None);
        let u = PadicApprox::new(-3, 5, 3).unwrap();
        assert_eq!(u.value(), 122);
        assert_eq!(u.mul(&u.inverse().unwrap()).value(), 1);
    }

    const SMALL_PRIMES: &[u64] = &[3, 5, 7, 11, 13, 101, 1009];

    proptest! {
        #[test]
        fn hensel_root_squares_back(idx in 0usize..7, x in 1i64..1_000_000, k in 1u32..4) {
            let q = SMALL_PRIMES[idx];
            prop_assume!(!(x as u64).is_multiple_of(q));
            let n = (x as i128) * (x as i128) + (q as i128) * 17;
            let r = hensel_sqrt(n, q, k).unwrap();
            let m = r.modulus() as i128;
            prop_assert_eq!(((r.value() as i128).pow(2) - n).rem_euclid(m), 0);
            prop_assert!(r.value() % q <= (q - 1) / 2);
        }

        #[test]
        fn teichmuller_round_trip(idx in 0usize..7, x in 1u64..10_000_000) {
            let ell = SMALL_PRIMES[idx];
            prop_assume!(x % ell != 0);
            let m = ell * ell;
            let t = teichmuller(x, ell).unwrap();
            prop_assert_eq!(pow_mod(t.xi, ell - 1, m), 1);
            prop_assert_eq!(mul_mod(t.xi, 1 + t.y * ell, m), x % m);
        }

        #[test]
        fn teichmuller_y_is_additive(idx in 0usize..7, a in 1u64..1_000_000, b in 1u64..1_000_000) {
            let ell = SMALL_PRIMES[idx];
            prop_assume!(a % ell != 0 && b % ell != 0);
            let m = ell * ell;
            let ya = teichmuller(a, ell).unwrap().y;
            let yb = teichmuller(b, ell).unwrap().y;
            let yab = teichmuller(mul_mod(a % m, b % m, m), ell).unwrap().y;
            prop_assert_eq!(yab, (ya + yb) % ell);
        }
    }
}
