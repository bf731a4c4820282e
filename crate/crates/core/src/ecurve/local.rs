//! E over Z/ℓ^k in homogeneous coordinates, and the class map
//! E(Q_ℓ) → E(Q_ℓ)/ℓ ≅ F_ℓ read off the formal group.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::fp::ec_group_order;
use super::RationalCurve;
use crate::arith::modular::{add_mod, inv_mod, mul_mod, reduce_big, sub_mod};
use crate::arith::padic::hensel_sqrt;
use crate::error::{Error, Result};
use crate::exec::Exec;

/// Working precision ℓ^4; the class map needs z(dP) mod ℓ².
pub const DEFAULT_LOCAL_PRECISION: u32 = 4;

/// Primitive homogeneous point (X : Y : Z) with coordinates mod ℓ^k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalPoint {
    pub x: u64,
    pub y: u64,
    pub z: u64,
}

/// Y²Z = X³ + aXZ² + bZ³ over Z/ℓ^k with good reduction at ℓ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalCurve {
    pub ell: u64,
    pub precision: u32,
    pub modulus: u64,
    pub a: u64,
    pub b: u64,
    /// #Ẽ(F_ℓ).
    pub reduction_order: u64,
}

impl LocalCurve {
    pub fn new(curve: &RationalCurve, ell: u64, precision: u32) -> Result<Self> {
        let reduced = curve.reduce(ell)?;
        let modulus = (ell as u128)
            .checked_pow(precision)
            .filter(|&m| m < (1u128 << 63))
            .ok_or(Error::PrecisionLoss { prime: ell, precision })? as u64;
        Ok(LocalCurve {
            ell,
            precision,
            modulus,
            a: reduce_big(&curve.a, modulus),
            b: reduce_big(&curve.b, modulus),
            reduction_order: ec_group_order(&reduced, Exec::Sequential),
        })
    }

    pub fn identity(&self) -> LocalPoint {
        LocalPoint { x: 0, y: 1, z: 0 }
    }

    pub fn affine(&self, x: &BigInt, y: &BigInt) -> Result<LocalPoint> {
        let m = self.modulus;
        let pt = LocalPoint { x: reduce_big(x, m), y: reduce_big(y, m), z: 1 };
        if !self.is_on_curve(&pt) {
            return Err(Error::NotOnCurve);
        }
        Ok(pt)
    }

    pub fn is_on_curve(&self, pt: &LocalPoint) -> bool {
        let m = self.modulus;
        let mm = |a, b| mul_mod(a, b, m);
        let lhs = mm(mm(pt.y, pt.y), pt.z);
        let z2 = mm(pt.z, pt.z);
        let rhs = add_mod(
            add_mod(mm(mm(pt.x, pt.x), pt.x), mm(self.a, mm(pt.x, z2)), m),
            mm(self.b, mm(z2, pt.z)),
            m,
        );
        lhs == rhs && self.is_primitive(pt)
    }

    fn is_primitive(&self, pt: &LocalPoint) -> bool {
        !pt.x.is_multiple_of(self.ell) || !pt.y.is_multiple_of(self.ell) || !pt.z.is_multiple_of(self.ell)
    }

    pub fn eq(&self, p1: &LocalPoint, p2: &LocalPoint) -> bool {
        let m = self.modulus;
        let minor = |a1, b1, a2, b2| sub_mod(mul_mod(a1, b2, m), mul_mod(a2, b1, m), m) == 0;
        minor(p1.x, p1.y, p2.x, p2.y) && minor(p1.x, p1.z, p2.x, p2.z) && minor(p1.y, p1.z, p2.y, p2.z)
    }

    pub fn neg(&self, pt: &LocalPoint) -> LocalPoint {
        LocalPoint { y: (self.modulus - pt.y) % self.modulus, ..*pt }
    }

    /// Complete projective addition for short Weierstrass curves. Returns
    /// `None` when every output coordinate is divisible by ℓ, which happens
    /// only if the reductions differ by a point of order two.
    fn add_complete(&self, p1: &LocalPoint, p2: &LocalPoint) -> Option<LocalPoint> {
        let m = self.modulus;
        let mul = |a, b| mul_mod(a, b, m);
        let add = |a, b| add_mod(a, b, m);
        let sub = |a, b| sub_mod(a, b, m);
        let (a, b3) = (self.a, mul(3, self.b));
        let (x1, y1, z1) = (p1.x, p1.y, p1.z);
        let (x2, y2, z2) = (p2.x, p2.y, p2.z);
        let xx = mul(x1, x2);
        let yy = mul(y1, y2);
        let zz = mul(z1, z2);
        let xy = add(mul(x1, y2), mul(x2, y1));
        let xz = add(mul(x1, z2), mul(x2, z1));
        let yz = add(mul(y1, z2), mul(y2, z1));
        let a_xz = mul(a, xz);
        let b3_zz = mul(b3, zz);
        let minus = sub(sub(yy, a_xz), b3_zz);
        let plus = add(add(yy, a_xz), b3_zz);
        let t = sub(add(mul(a, xx), mul(b3, xz)), mul(mul(a, a), zz));
        let u = add(mul(3, xx), mul(a, zz));
        let out = LocalPoint {
            x: sub(mul(xy, minus), mul(yz, t)),
            y: add(mul(u, t), mul(plus, minus)),
            z: add(mul(yz, plus), mul(xy, u)),
        };
        self.is_primitive(&out).then_some(out)
    }

    /// Points with unit y over x = 0, 1, …, ℓ-1, lifted to full precision.
    fn auxiliary_points(&self) -> impl Iterator<Item = LocalPoint> + '_ {
        let m = self.modulus;
        (0..self.ell).filter_map(move |x| {
            let rhs = add_mod(mul_mod(x, add_mod(mul_mod(x, x, m), self.a, m), m), self.b, m);
            let y = hensel_sqrt(rhs as i128, self.ell, self.precision).ok()?;
            Some(LocalPoint { x, y: y.value(), z: 1 })
        })
    }

    /// Chord or tangent in affine coordinates, when the slope denominator
    /// is a unit.
    fn add_affine(&self, p1: &LocalPoint, p2: &LocalPoint) -> Option<LocalPoint> {
        let m = self.modulus;
        let p1 = self.normalize(p1);
        let p2 = self.normalize(p2);
        if p1.z != 1 || p2.z != 1 {
            return None;
        }
        let lambda = if self.eq(&p1, &p2) {
            let num = add_mod(mul_mod(3, mul_mod(p1.x, p1.x, m), m), self.a, m);
            mul_mod(num, inv_mod(mul_mod(2, p1.y, m), m)?, m)
        } else {
            mul_mod(sub_mod(p2.y, p1.y, m), inv_mod(sub_mod(p2.x, p1.x, m), m)?, m)
        };
        let x3 = sub_mod(sub_mod(mul_mod(lambda, lambda, m), p1.x, m), p2.x, m);
        let y3 = sub_mod(mul_mod(lambda, sub_mod(p1.x, x3, m), m), p1.y, m);
        Some(LocalPoint { x: x3, y: y3, z: 1 })
    }

    pub fn add(&self, p1: &LocalPoint, p2: &LocalPoint) -> Result<LocalPoint> {
        if let Some(r) = self.add_complete(p1, p2).or_else(|| self.add_affine(p1, p2)) {
            return Ok(r);
        }
        if self.eq(p1, &self.identity()) {
            return Ok(*p2);
        }
        if self.eq(p2, &self.identity()) {
            return Ok(*p1);
        }
        // route through an auxiliary S: (P + S) + (Q - S), or ((P + S) + Q) - S
        let step = |x: &LocalPoint, y: &LocalPoint| self.add_complete(x, y).or_else(|| self.add_affine(x, y));
        for s in self.auxiliary_points() {
            let neg_s = self.neg(&s);
            let Some(ps) = step(p1, &s) else { continue };
            if let Some(r) = step(p2, &neg_s).and_then(|qs| step(&ps, &qs)) {
                return Ok(r);
            }
            if let Some(r) = step(&ps, p2).and_then(|t| step(&t, &neg_s)) {
                return Ok(r);
            }
        }
        Err(Error::NonInvertibleDenominator { modulus: self.modulus })
    }

    pub fn scalar_mul(&self, mut n: u64, pt: &LocalPoint) -> Result<LocalPoint> {
        let mut acc = self.identity();
        let mut base = *pt;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(&acc, &base)?;
            }
            n >>= 1;
            if n > 0 {
                base = self.add(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// Scales `pt` so that its last unit coordinate among (Z, Y) is 1.
    pub fn normalize(&self, pt: &LocalPoint) -> LocalPoint {
        let m = self.modulus;
        let (pivot, y_pivot) = if !pt.z.is_multiple_of(self.ell) { (pt.z, false) } else { (pt.y, true) };
        let inv = inv_mod(pivot, m).expect("primitive point has a unit Y or Z");
        let s = |v| mul_mod(v, inv, m);
        if y_pivot {
            LocalPoint { x: s(pt.x), y: 1, z: s(pt.z) }
        } else {
            LocalPoint { x: s(pt.x), y: s(pt.y), z: 1 }
        }
    }

    /// z = -X/Y for points reducing to O.
    pub fn formal_parameter(&self, pt: &LocalPoint) -> Option<u64> {
        if !pt.x.is_multiple_of(self.ell) || !pt.z.is_multiple_of(self.ell) {
            return None;
        }
        let inv = inv_mod(pt.y, self.modulus)?;
        Some((self.modulus - mul_mod(pt.x, inv, self.modulus)) % self.modulus)
    }
}

/// Class of a point in E(Q_ℓ)/ℓ, normalized through the formal group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalClass {
    pub c: u64,
    /// The cofactor #Ẽ(F_ℓ) moving points into the kernel of reduction.
    pub d: u64,
}

/// c(P) = z(dP)/ℓ mod ℓ with d = #Ẽ(F_ℓ).
pub fn local_class(curve: &LocalCurve, pt: &LocalPoint) -> Result<LocalClass> {
    let ell = curve.ell;
    let d = curve.reduction_order;
    if d.is_multiple_of(ell) {
        return Err(Error::OutOfScope(format!("{ell} divides the reduced group order {d}")));
    }
    if curve.precision < 2 {
        return Err(Error::PrecisionLoss { prime: ell, precision: curve.precision });
    }
    let dp = curve.scalar_mul(d, pt)?;
    let z = curve
        .formal_parameter(&dp)
        .ok_or_else(|| Error::VerificationFailed("d·P does not reduce to the identity".into()))?;
    let z2 = z % (ell * ell);
    Ok(LocalClass { c: z2 / ell, d })
}
