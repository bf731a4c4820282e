//! Real quadratic fields K = Q(√D): elements of the maximal order, units,
//! class numbers, places and completions.

mod classno;
mod place;
mod rayclass;
mod units;

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::smooth::squarefree_decomposition;
use crate::error::{Error, Result};

pub use classno::{class_number, narrow_class_number, CLASS_NUMBER_BOUND};
pub use place::{
    embed, factor_principal, factor_principal_over, is_local_unit, norm_from_factorization, residue, split_places, Place, Splitting,
};
pub use rayclass::ray_class_ell_rank;
pub use units::fundamental_unit;

/// `a + b·ω` in the maximal order, with `ω = √D` for D ≡ 2, 3 (mod 4) and
/// `ω = (1 + √D)/2` for D ≡ 1 (mod 4).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl QuadInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        QuadInt { a: a.into(), b: b.into() }
    }

    pub fn rational(a: impl Into<BigInt>) -> Self {
        QuadInt { a: a.into(), b: BigInt::zero() }
    }

    pub fn zero() -> Self {
        Self::rational(0)
    }

    pub fn one() -> Self {
        Self::rational(1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        QuadInt { a: &self.a * k, b: &self.b * k }
    }
}

impl Add for &QuadInt {
    type Output = QuadInt;
    fn add(self, o: &QuadInt) -> QuadInt {
        QuadInt { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl Sub for &QuadInt {
    type Output = QuadInt;
    fn sub(self, o: &QuadInt) -> QuadInt {
        QuadInt { a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl Neg for &QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt { a: -&self.a, b: -&self.b }
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}w", self.a, self.b)
    }
}

#[derive(Debug, Default)]
struct Cache {
    unit: OnceLock<Result<(QuadInt, i32)>>,
    class_number: OnceLock<Result<u64>>,
}

/// K = Q(√D) with squarefree `D > 1`.
///
/// The fundamental unit and class number are computed on first use and
/// cached; clones share the cache.
#[derive(Debug, Clone)]
pub struct RealQuadField {
    radicand: u128,
    cache: Arc<Cache>,
}

impl PartialEq for RealQuadField {
    fn eq(&self, other: &Self) -> bool {
        self.radicand == other.radicand
    }
}
impl Eq for RealQuadField {}

impl RealQuadField {
    pub fn new(d: u128) -> Result<Self> {
        if d <= 1 {
            return Err(Error::BadInput(format!("radicand must exceed 1, got {d}")));
        }
        if squarefree_decomposition(d).1 != 1 {
            return Err(Error::NotSquarefree(d.to_string()));
        }
        Ok(RealQuadField { radicand: d, cache: Arc::default() })
    }

    /// Q(√n) for arbitrary `n > 1`, returned with the square root `f` of the
    /// square part, so that `√n = f·√D`.
    pub fn from_radicand(n: u128) -> Result<(Self, u128)> {
        let (kernel, root) = squarefree_decomposition(n);
        if kernel == 1 {
            return Err(Error::BadInput(format!("{n} is a perfect square")));
        }
        Ok((RealQuadField { radicand: kernel, cache: Arc::default() }, root))
    }

    pub fn radicand(&self) -> u128 {
        self.radicand
    }

    pub fn omega_is_half(&self) -> bool {
        self.radicand % 4 == 1
    }

    pub fn discriminant(&self) -> u128 {
        if self.omega_is_half() {
            self.radicand
        } else {
            4 * self.radicand
        }
    }

    fn d_big(&self) -> BigInt {
        BigInt::from(self.radicand)
    }

    /// The element `x + y·√D`.
    pub fn from_sqrt_coords(&self, x: impl Into<BigInt>, y: impl Into<BigInt>) -> QuadInt {
        let (x, y) = (x.into(), y.into());
        if self.omega_is_half() {
            QuadInt { a: &x - &y, b: &y * 2 }
        } else {
            QuadInt { a: x, b: y }
        }
    }

    /// Coordinates `(x, y)` with the element equal to `(x + y·√D)/denom`.
    pub fn sqrt_coords(&self, v: &QuadInt) -> (BigInt, BigInt, u32) {
        if self.omega_is_half() {
            (&v.a * 2 + &v.b, v.b.clone(), 2)
        } else {
            (v.a.clone(), v.b.clone(), 1)
        }
    }

    pub fn mul(&self, x: &QuadInt, y: &QuadInt) -> QuadInt {
        let bb = &x.b * &y.b;
        let cross = &x.a * &y.b + &x.b * &y.a;
        if self.omega_is_half() {
            // ω² = ω + (D-1)/4
            let c = BigInt::from((self.radicand - 1) / 4);
            QuadInt { a: &x.a * &y.a + &bb * c, b: cross + bb }
        } else {
            QuadInt { a: &x.a * &y.a + bb * self.d_big(), b: cross }
        }
    }

    pub fn pow(&self, x: &QuadInt, mut n: u64) -> QuadInt {
        let mut acc = QuadInt::one();
        let mut base = x.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    pub fn conj(&self, x: &QuadInt) -> QuadInt {
        if self.omega_is_half() {
            QuadInt { a: &x.a + &x.b, b: -&x.b }
        } else {
            QuadInt { a: x.a.clone(), b: -&x.b }
        }
    }

    pub fn norm(&self, x: &QuadInt) -> BigInt {
        if self.omega_is_half() {
            let c = BigInt::from((self.radicand - 1) / 4);
            &x.a * &x.a + &x.a * &x.b - &x.b * &x.b * c
        } else {
            &x.a * &x.a - &x.b * &x.b * self.d_big()
        }
    }

    pub fn trace(&self, x: &QuadInt) -> BigInt {
        if self.omega_is_half() {
            &x.a * 2 + &x.b
        } else {
            &x.a * 2
        }
    }

    pub fn is_unit(&self, x: &QuadInt) -> bool {
        self.norm(x).abs().is_one()
    }

    /// Image under the embedding √D ↦ +√D in the reals (approximate).
    pub fn to_f64(&self, x: &QuadInt) -> f64 {
        let sqrt_d = (self.radicand as f64).sqrt();
        let w = if self.omega_is_half() { (1.0 + sqrt_d) / 2.0 } else { sqrt_d };
        x.a.to_f64().unwrap_or(f64::NAN) + x.b.to_f64().unwrap_or(f64::NAN) * w
    }

    /// Fundamental unit (> 1 under the positive real embedding) and its norm.
    pub fn fundamental_unit(&self) -> Result<(QuadInt, i32)> {
        self.cache.unit.get_or_init(|| units::compute_fundamental_unit(self.radicand)).clone()
    }

    /// Wide class number h_K, by exhaustive reduced-form enumeration.
    pub fn class_number(&self) -> Result<u64> {
        self.cache.class_number.get_or_init(|| classno::class_number(self.radicand)).clone()
    }
}

impl fmt::Display for RealQuadField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(sqrt({}))", self.radicand)
    }
}
