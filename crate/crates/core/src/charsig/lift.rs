//! Lifting a target a ∈ F_p^* to a unit γ + d of Q(√(1+d²)) that reduces
//! to a at a place over p.

use super::instance::CharSignatureInstance;
use crate::arith::modular::{inv_mod, legendre, mul_mod, pow_mod, sub_mod};
use crate::error::{Error, Result};
use crate::quadfield::{split_places, RealQuadField, Splitting};

/// Number of shifts d + rp tried before giving up.
pub const MAX_LIFT_RETRIES: u64 = 256;

/// First shift tried; spreads seeds over distinct fields.
const OFFSET_RANGE: u64 = 32;

/// Lifts `a` to a unit α = γ + d with N(α) = -1, trying d + rp for
/// r = seed mod 32, seed mod 32 + 1, … until the field satisfies every
/// solvability condition.
pub fn lift_unit(a: u64, p: u64, ell: u64, g: u64, seed: u64) -> Result<CharSignatureInstance> {
    if !(p - 1).is_multiple_of(ell) {
        return Err(Error::BadInput(format!("{ell} does not divide {p} - 1")));
    }
    let a = a % p;
    if a == 1 || a == p - 1 {
        return Err(Error::DegenerateTarget { a });
    }
    if a == 0 {
        return Err(Error::NotAUnit { x: "0".into(), modulus: p });
    }
    if pow_mod(a, (p - 1) / ell, p) == 1 {
        return Err(Error::BadInput(format!("{a} is an ell-th power mod {p}")));
    }
    let inv2 = inv_mod(2, p).expect("p odd");
    let b = inv_mod(a, p).expect("a is a unit");
    let c = mul_mod((a + b) % p, inv2, p);
    let d0 = mul_mod(sub_mod(a, b, p), inv2, p);
    let offset = seed % OFFSET_RANGE;
    for r in offset..offset + MAX_LIFT_RETRIES {
        let d = d0 as u128 + r as u128 * p as u128;
        let n = 1 + d * d;
        if legendre((n % ell as u128) as u64, ell) != 1 {
            continue;
        }
        let Ok((field, f)) = RealQuadField::from_radicand(n) else { continue };
        // γ = f√D must reduce to ±c at the places over p and stay a unit at ℓ
        if f % p as u128 == 0 || f % ell as u128 == 0 || n.is_multiple_of(p as u128) {
            continue;
        }
        if split_places(p, &field)[0].splitting != Splitting::Split
            || split_places(ell, &field)[0].splitting != Splitting::Split
        {
            continue;
        }
        let f_mod = (f % p as u128) as u64;
        let v_label = mul_mod(c, inv_mod(f_mod, p).expect("p ∤ f"), p);
        let u_label = split_places(ell, &field)[0].root_label.expect("split");
        let alpha = field.from_sqrt_coords(d as i128, f as i128);
        let inst = CharSignatureInstance::new(field, p, ell, g, alpha, u_label, v_label, seed)?;
        debug_assert_eq!(inst.a, a);
        if inst.conditions.all_hold() {
            return Ok(inst);
        }
    }
    Err(Error::BudgetExhausted { attempts: MAX_LIFT_RETRIES, what: "unit lifting".into() })
}
