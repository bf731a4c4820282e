//! Class numbers of real quadratic fields by counting cycles of reduced
//! indefinite binary quadratic forms.

use std::collections::HashMap;

use super::units::unit_norm;
use super::RealQuadField;
use crate::arith::modular::{isqrt_u128, primes_up_to};
use crate::error::{Error, Result};

/// Largest field discriminant accepted by the exhaustive enumeration.
pub const CLASS_NUMBER_BOUND: u64 = 100_000_000;

type Form = (i64, i64, i64);

fn divisors(mut n: u64, primes: &[u64]) -> Vec<u64> {
    let mut divs = vec![1u64];
    for &p in primes {
        if p * p > n {
            break;
        }
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            let len = divs.len();
            let mut pk = 1;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
    }
    if n > 1 {
        let len = divs.len();
        for i in 0..len {
            divs.push(divs[i] * n);
        }
    }
    divs
}

/// All reduced forms `(a, b, c)` of discriminant `disc`: `0 < b < √disc`
/// and `√disc - b < 2|a| < √disc + b`.
fn reduced_forms(disc: i64) -> Vec<Form> {
    let s = isqrt_u128(disc as u128) as i64;
    let primes = primes_up_to(isqrt_u128(disc as u128 / 4) as u64 + 1);
    let mut forms = Vec::new();
    let mut b = if disc % 2 == 0 { 2 } else { 1 };
    while b <= s {
        let n = (disc - b * b) / 4;
        if n > 0 {
            for a in divisors(n as u64, &primes) {
                let a = a as i64;
                if s - b < 2 * a && 2 * a <= s + b {
                    forms.push((a, b, -n / a));
                    forms.push((-a, b, n / a));
                }
            }
        }
        b += 2;
    }
    forms.sort_unstable();
    forms
}

/// One reduction step, mapping a reduced form to its right neighbour.
fn rho((_, b, c): Form, disc: i64, s: i64) -> Form {
    let m = 2 * c.abs();
    let r0 = (-b).rem_euclid(m);
    let r = s - (s - r0).rem_euclid(m);
    (c, r, (r * r - disc) / (4 * c))
}

/// Narrow class number h⁺, the number of reduction cycles.
pub fn narrow_class_number(d: u128) -> Result<u64> {
    let k = RealQuadField::new(d)?;
    let disc = k.discriminant();
    if disc > CLASS_NUMBER_BOUND as u128 {
        return Err(Error::TooLarge { discriminant: disc.to_string(), bound: CLASS_NUMBER_BOUND });
    }
    let disc = disc as i64;
    let s = isqrt_u128(disc as u128) as i64;
    let forms = reduced_forms(disc);
    let index: HashMap<Form, usize> = forms.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let mut seen = vec![false; forms.len()];
    let mut cycles = 0u64;
    for start in 0..forms.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            let next = rho(forms[i], disc, s);
            i = *index.get(&next).ok_or_else(|| {
                Error::VerificationFailed(format!("reduction left the reduced set at {next:?}"))
            })?;
        }
    }
    Ok(cycles)
}

/// Wide class number h_K. Equals h⁺ when the fundamental unit has norm -1,
/// and h⁺/2 otherwise.
pub fn class_number(d: u128) -> Result<u64> {
    let hp = narrow_class_number(d)?;
    Ok(if unit_norm(d) == -1 { hp } else { hp / 2 })
}
