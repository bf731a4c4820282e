//! Lifting (Ẽ, Q̃, R̃) over F_p to (E, K, Q, R) by a seeded sweep of shifts r.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::instance::EcSignatureInstance;
use crate::arith::modular::{inv_mod, is_prime, mul_mod, reduce_big};
use crate::ecurve::{ec_group_order, FpCurve, FpPoint, RationalCurve};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::quadfield::{split_places, RealQuadField};

/// Shifts tried before giving up.
pub const MAX_EC_LIFT_RETRIES: u64 = 1000;

/// First shift is `1 + seed mod 256`, so nearby seeds start at distinct r.
const OFFSET_RANGE: u64 = 256;

const BLOCK: u64 = 8;

/// Lifts Q̃ = (x₀, y₀) to Q = (x₀, y₀ + rp) on E_r: y² = x³ + ax + b_r and
/// R̃ = (μ, ν) to R = (μ + rp, f√D) over K = Q(√D), where
/// (μ + rp)³ + a(μ + rp) + b_r = f²D. The first shift r whose lift passes
/// every check is returned; the sweep is deterministic in `seed`.
pub fn lift_ec_instance(
    base: &FpCurve,
    q_tilde: &FpPoint,
    r_tilde: &FpPoint,
    ell: u64,
    seed: u64,
    exec: Exec,
) -> Result<EcSignatureInstance> {
    let p = base.p;
    let order = ec_group_order(base, Exec::Sequential);
    if order != ell || !is_prime(ell) || ell == 2 || ell == p {
        return Err(Error::BadInput(format!(
            "#E(F_{p}) = {order}; need it to equal ell = {ell}, an odd prime other than p"
        )));
    }
    let (FpPoint::Affine { x: x0, y: y0 }, FpPoint::Affine { x: mu, y: nu }) = (*q_tilde, *r_tilde) else {
        return Err(Error::BadInput("Q̃ and R̃ must be affine; the log of the identity is 0".into()));
    };
    if !base.is_on_curve(q_tilde) || !base.is_on_curve(r_tilde) {
        return Err(Error::NotOnCurve);
    }
    let offset = 1 + seed % OFFSET_RANGE;
    let mut failures: BTreeMap<&'static str, u64> = BTreeMap::new();
    let mut i = 0;
    while i < MAX_EC_LIFT_RETRIES {
        let hi = (i + BLOCK).min(MAX_EC_LIFT_RETRIES);
        let outcomes = exec.map_range(i, hi, |j| try_shift(base, (x0, y0), (mu, nu), ell, offset + j, seed));
        for outcome in outcomes {
            match outcome {
                Ok(inst) => return Ok(inst),
                Err(why) => *failures.entry(why).or_default() += 1,
            }
        }
        i = hi;
    }
    let (worst, count) = failures.iter().max_by_key(|(_, &c)| c).map(|(w, c)| (*w, *c)).unwrap_or(("none", 0));
    Err(Error::BudgetExhausted {
        attempts: MAX_EC_LIFT_RETRIES,
        what: format!("elliptic lift; most frequent failure: {worst} ({count} times)"),
    })
}

fn try_shift(
    base: &FpCurve,
    (x0, y0): (u64, u64),
    (mu, nu): (u64, u64),
    ell: u64,
    r: u64,
    seed: u64,
) -> std::result::Result<EcSignatureInstance, &'static str> {
    let p = base.p;
    let a = BigInt::from(base.a);
    let shift = BigInt::from(r) * p;
    let qx = BigInt::from(x0);
    let qy = BigInt::from(y0) + &shift;
    let b_r = &qy * &qy - qx.pow(3) - &a * &qx;
    let curve = RationalCurve::new(a.clone(), b_r.clone()).map_err(|_| "singular lift")?;
    if !curve.has_good_reduction(ell) {
        return Err("bad reduction at ell");
    }
    let at_ell = curve.reduce(ell).map_err(|_| "bad reduction at ell")?;
    if ec_group_order(&at_ell, Exec::Sequential).is_multiple_of(ell) {
        return Err("ell divides #E(F_ell)");
    }
    let mu_r = BigInt::from(mu) + &shift;
    let cubic = mu_r.pow(3) + &a * &mu_r + &b_r;
    if !cubic.is_positive() {
        return Err("cubic value not positive");
    }
    let n = cubic.to_u128().ok_or("cubic value exceeds 128 bits")?;
    let (field, f) = RealQuadField::from_radicand(n).map_err(|_| "cubic value is a square")?;
    if f % p as u128 == 0 {
        return Err("p divides f");
    }
    let places_p = split_places(p, &field);
    let places_ell = split_places(ell, &field);
    if !places_p[0].is_split() {
        return Err("p does not split");
    }
    if !places_ell[0].is_split() {
        return Err("ell does not split");
    }
    // v is the place where f·√D reduces to ν
    let f_mod = (f % p as u128) as u64;
    let s_v = mul_mod(nu, inv_mod(f_mod, p).expect("p ∤ f"), p);
    let v = places_p.iter().find(|w| w.root_label == Some(s_v)).ok_or("no place over p matches ν")?;
    let u = places_ell[0];
    let f_big = BigInt::from(f);
    debug_assert_eq!(reduce_big(&(&f_big * &f_big * BigInt::from(field.radicand())), p), mul_mod(nu, nu, p));
    let r_point = (field.from_sqrt_coords(mu_r, 0), field.from_sqrt_coords(0, f_big));
    let labels = (u.root_label.expect("split"), v.root_label.expect("split"));
    EcSignatureInstance::new(curve, field, (qx, qy), r_point, p, ell, labels.0, labels.1, seed).map_err(|e| match e {
        Error::ConditionsFailed(_) => "independence certificate fails",
        Error::NonInvertibleDenominator { .. } => "local law hit a non-invertible denominator",
        _ => "instance validation failed",
    })
}

/// A curve y² = x³ + ax + b over F_p with #E(F_p) an odd prime other than
/// p: the least b ≥ 1 for a = seed mod p, moving on to a + 1, … when no b
/// works (a = 0 is supersingular for p ≡ 2 mod 3). Returns the curve and
/// its order.
pub fn find_prime_order_curve(p: u64, seed: u64) -> Result<(FpCurve, u64)> {
    if p < 5 || !is_prime(p) {
        return Err(Error::BadInput(format!("{p} is not a prime >= 5")));
    }
    for i in 0..p {
        let a = (seed % p + i) % p;
        for b in 1..p {
            let Ok(c) = FpCurve::new(p, a, b) else { continue };
            let n = ec_group_order(&c, Exec::Sequential);
            if n != p && n > 2 && is_prime(n) {
                return Ok((c, n));
            }
        }
    }
    Err(Error::BudgetExhausted { attempts: p * (p - 1), what: format!("prime-order curve over F_{p}") })
}
