//! Elliptic curves y² = x³ + ax + b: arithmetic over F_p, point counting,
//! local dimensions, and classes in E(Q_ℓ)/ℓ through the formal group.

mod fp;
mod lemma;
mod local;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::modular::reduce_big;
use crate::error::{Error, Result};

pub use fp::{ec_group_order, ell_torsion_count, FpCurve, FpPoint, ENUMERATION_LIMIT};
pub use lemma::{bad_place_assumption_holds, h1_local_dim};
pub use local::{local_class, LocalClass, LocalCurve, LocalPoint, DEFAULT_LOCAL_PRECISION};

/// A curve over Q with integral coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalCurve {
    pub a: BigInt,
    pub b: BigInt,
}

impl RationalCurve {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Result<Self> {
        let c = RationalCurve { a: a.into(), b: b.into() };
        if c.discriminant().is_zero() {
            return Err(Error::Singular);
        }
        Ok(c)
    }

    /// -16(4a³ + 27b²).
    pub fn discriminant(&self) -> BigInt {
        let core = BigInt::from(4) * self.a.pow(3) + BigInt::from(27) * self.b.pow(2);
        -BigInt::from(16) * core
    }

    pub fn has_good_reduction(&self, q: u64) -> bool {
        q != 2 && reduce_big(&self.discriminant(), q) != 0
    }

    pub fn reduce(&self, q: u64) -> Result<FpCurve> {
        if !self.has_good_reduction(q) {
            return Err(Error::BadReduction(q));
        }
        FpCurve::new(q, reduce_big(&self.a, q), reduce_big(&self.b, q))
    }

    /// `v_q` of the discriminant.
    pub fn discriminant_valuation(&self, q: u64) -> u32 {
        let mut d = self.discriminant().abs();
        let qb = BigInt::from(q);
        let mut v = 0;
        while !d.is_zero() && (&d % &qb).is_zero() {
            d /= &qb;
            v += 1;
        }
        v
    }

    pub fn is_on_curve(&self, x: &BigInt, y: &BigInt) -> bool {
        y * y == x.pow(3) + &self.a * x + &self.b
    }
}
