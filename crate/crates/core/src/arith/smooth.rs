//! Trial-division smoothness tests and squarefree decomposition.

use std::collections::BTreeMap;

use super::modular::{icbrt_u128, isqrt_u128, primes_up_to};
use crate::error::{Error, Result};

/// Factor `n` over the primes `<= bound`; rejects with the cofactor otherwise.
pub fn factor_smooth(n: u64, bound: u64) -> Result<BTreeMap<u64, u32>> {
    if n == 0 {
        return Err(Error::BadInput("cannot factor zero".into()));
    }
    factor_over(n as u128, &primes_up_to(bound))
        .map(|v| v.into_iter().collect())
        .map_err(|cofactor| Error::NotSmooth { cofactor: cofactor.to_string() })
}

/// Factor `n` over an explicit sorted prime list. On failure returns the
/// surviving cofactor.
pub fn factor_over(mut n: u128, primes: &[u64]) -> std::result::Result<Vec<(u64, u32)>, u128> {
    let mut out = Vec::new();
    for &q in primes {
        if n == 1 {
            break;
        }
        let q128 = q as u128;
        if n.is_multiple_of(q128) {
            let mut e = 0;
            while n.is_multiple_of(q128) {
                n /= q128;
                e += 1;
            }
            out.push((q, e));
        }
    }
    if n == 1 {
        Ok(out)
    } else {
        Err(n)
    }
}

/// Write `n = kernel * root^2` with `kernel` squarefree.
///
/// Trial division runs up to the cube root of the remaining cofactor, after
/// which the cofactor is 1, a prime, a product of two distinct primes, or a
/// prime square; the last case is caught by a perfect-square test.
pub fn squarefree_decomposition(n: u128) -> (u128, u128) {
    assert!(n > 0);
    let mut kernel = 1u128;
    let mut root = 1u128;
    let mut rest = n;
    let mut d = 2u128;
    while d <= icbrt_u128(rest) {
        if rest.is_multiple_of(d) {
            let mut e = 0;
            while rest.is_multiple_of(d) {
                rest /= d;
                e += 1;
            }
            root *= d.pow(e / 2);
            if e % 2 == 1 {
                kernel *= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let s = isqrt_u128(rest);
    if rest > 1 && s * s == rest {
        root *= s;
    } else {
        kernel *= rest;
    }
    (kernel, root)
}

pub fn is_squarefree(n: u128) -> bool {
    n > 0 && squarefree_decomposition(n).1 == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smooth_examples() {
        assert!(factor_smooth(1, 5).unwrap().is_empty());
        let f = factor_smooth(12, 5).unwrap();
        assert_eq!(f, BTreeMap::from([(2, 2), (3, 1)]));
        assert_eq!(factor_smooth(14, 5), Err(Error::NotSmooth { cofactor: "7".into() }));
    }

    #[test]
    fn squarefree_kernels() {
        assert_eq!(squarefree_decomposition(4226), (4226, 1));
        assert_eq!(squarefree_decomposition(50), (2, 5));
        assert_eq!(squarefree_decomposition(1_000_003u128 * 1_000_003 * 7), (7, 1_000_003));
        assert_eq!(squarefree_decomposition(1_000_003u128 * 999_983 * 4), (1_000_003 * 999_983, 2));
        for n in 1u128..2000 {
            let (k, r) = squarefree_decomposition(n);
            assert_eq!(k * r * r, n);
            assert!((2..=k).take_while(|d| d * d <= k).all(|d| k % (d * d) != 0));
        }
    }
}
