//! The lifted configuration (E, K, Q, R, u, u′, v) and its serialized form.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::modular::{inv_mod, is_prime, mul_mod, reduce_big, sub_mod};
use crate::ecurve::{
    ec_group_order, local_class, FpCurve, FpPoint, LocalCurve, LocalPoint, RationalCurve, DEFAULT_LOCAL_PRECISION,
};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::quadfield::{embed, residue, split_places, Place, QuadInt, RealQuadField};

/// One of the two global points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Which {
    Q,
    R,
}

/// E: y² = x³ + ax + b_r over Q with Q ∈ E(Q) and R ∈ E(K), reducing to
/// Q̃ and R̃ on Ẽ/F_p at the place v.
///
/// Invariants: #Ẽ(F_p) = ℓ is an odd prime other than p; E has good
/// reduction at ℓ with ℓ ∤ #Ẽ(F_ℓ); p and ℓ split in K; the certificate
/// `[[c_u(Q), c_u′(Q)], [c_u(R), c_u′(R)]]` is invertible over F_ℓ with
/// c_u(Q) ≠ 0 and c_u′(R) ≠ 0.
#[derive(Debug, Clone)]
pub struct EcSignatureInstance {
    pub p: u64,
    pub ell: u64,
    pub base: FpCurve,
    pub q_tilde: FpPoint,
    pub r_tilde: FpPoint,
    pub curve: RationalCurve,
    pub field: RealQuadField,
    pub q_point: (BigInt, BigInt),
    /// Coordinates in Z[√D].
    pub r_point: (QuadInt, QuadInt),
    pub u: Place,
    pub u_prime: Place,
    pub v: Place,
    pub v_prime: Place,
    pub seed: u64,
    /// Ш(E)[ℓ] = 0 is assumed, never checked.
    pub sha_assumption: bool,
    pub certificate: [[u64; 2]; 2],
    pub(crate) local: LocalCurve,
}

fn place_with_label(q: u64, k: &RealQuadField, label: u64) -> Result<Place> {
    split_places(q, k)
        .into_iter()
        .find(|w| w.is_split() && w.root_label == Some(label))
        .ok_or_else(|| Error::BadInput(format!("no split place over {q} with root label {label}")))
}

impl EcSignatureInstance {
    /// Validates the configuration and computes the independence certificate.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        curve: RationalCurve,
        field: RealQuadField,
        q_point: (BigInt, BigInt),
        r_point: (QuadInt, QuadInt),
        p: u64,
        ell: u64,
        u_label: u64,
        v_label: u64,
        seed: u64,
    ) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::BadInput(format!("{p} is not an odd prime")));
        }
        if ell < 3 || ell == p || !is_prime(ell) {
            return Err(Error::BadInput(format!("ell = {ell} must be an odd prime other than p")));
        }
        let base = curve.reduce(p)?;
        let order = ec_group_order(&base, Exec::Sequential);
        if order != ell {
            return Err(Error::BadInput(format!("#E(F_{p}) = {order}, expected {ell}")));
        }
        if !curve.is_on_curve(&q_point.0, &q_point.1) {
            return Err(Error::NotOnCurve);
        }
        let (rx, ry) = &r_point;
        let rhs = &(&field.mul(&field.mul(rx, rx), rx) + &rx.scale(&curve.a)) + &QuadInt::rational(curve.b.clone());
        if field.mul(ry, ry) != rhs {
            return Err(Error::NotOnCurve);
        }
        let u = place_with_label(ell, &field, u_label)?;
        let v = place_with_label(p, &field, v_label)?;
        let local = LocalCurve::new(&curve, ell, DEFAULT_LOCAL_PRECISION)?;
        let q_tilde = FpPoint::affine(reduce_big(&q_point.0, p), reduce_big(&q_point.1, p));
        let r_tilde = FpPoint::affine(residue(&field, rx, &v)?, residue(&field, ry, &v)?);
        debug_assert!(base.is_on_curve(&q_tilde) && base.is_on_curve(&r_tilde));
        let mut inst = EcSignatureInstance {
            p,
            ell,
            base,
            q_tilde,
            r_tilde,
            curve,
            field,
            q_point,
            r_point,
            u,
            u_prime: u.conjugate(),
            v,
            v_prime: v.conjugate(),
            seed,
            sha_assumption: true,
            certificate: [[0; 2]; 2],
            local,
        };
        let (u, u_prime) = (inst.u, inst.u_prime);
        inst.certificate = [
            [inst.class_at(Which::Q, &u)?, inst.class_at(Which::Q, &u_prime)?],
            [inst.class_at(Which::R, &u)?, inst.class_at(Which::R, &u_prime)?],
        ];
        if let Some(why) = inst.certificate_failure() {
            return Err(Error::ConditionsFailed(why.into()));
        }
        Ok(inst)
    }

    pub(crate) fn certificate_failure(&self) -> Option<&'static str> {
        let [[qu, qu2], [ru, ru2]] = self.certificate;
        let ell = self.ell;
        if qu == 0 {
            Some("c_u(Q) = 0")
        } else if ru2 == 0 {
            Some("c_u'(R) = 0")
        } else if mul_mod(qu, ru2, ell) == mul_mod(qu2, ru, ell) {
            Some("independence certificate is singular")
        } else {
            None
        }
    }

    /// Image of Q or R in E(Z/ℓ^k) at a place over ℓ.
    pub(crate) fn local_point(&self, which: Which, w: &Place) -> Result<LocalPoint> {
        let prec = self.local.precision;
        let pt = match which {
            Which::Q => self.local.affine(&self.q_point.0, &self.q_point.1)?,
            Which::R => {
                let x = embed(&self.field, &self.r_point.0, w, prec)?;
                let y = embed(&self.field, &self.r_point.1, w, prec)?;
                LocalPoint { x: x.value(), y: y.value(), z: 1 }
            }
        };
        if !self.local.is_on_curve(&pt) {
            return Err(Error::VerificationFailed(format!("local image at {w} is off the curve")));
        }
        Ok(pt)
    }

    /// Class of Q or R in E(K_w)/ℓ ≅ F_ℓ at a place over ℓ.
    pub(crate) fn class_at(&self, which: Which, w: &Place) -> Result<u64> {
        Ok(local_class(&self.local, &self.local_point(which, w)?)?.c)
    }

    /// Reduction of Q or R at a degree-one place of good reduction.
    pub(crate) fn reduce_at(&self, which: Which, w: &Place) -> Result<(FpCurve, FpPoint)> {
        let q = w.prime;
        let red = self.curve.reduce(q)?;
        let pt = match which {
            Which::Q => FpPoint::affine(reduce_big(&self.q_point.0, q), reduce_big(&self.q_point.1, q)),
            Which::R => FpPoint::affine(
                residue(&self.field, &self.r_point.0, w)?,
                residue(&self.field, &self.r_point.1, w)?,
            ),
        };
        debug_assert!(red.is_on_curve(&pt));
        Ok((red, pt))
    }

    /// n ≡ c_u(R)·c_u(Q)⁻¹, the coordinate of R against Q at u.
    pub fn n(&self) -> u64 {
        let [[qu, _], [ru, _]] = self.certificate;
        mul_mod(ru, inv_mod(qu, self.ell).expect("c_u(Q) ≠ 0"), self.ell)
    }

    /// Whether m·Q̃ = R̃ on Ẽ(F_p).
    pub fn check_log(&self, m: u64) -> bool {
        self.base.scalar_mul(m, &self.q_tilde) == self.r_tilde
    }

    pub fn to_doc(&self) -> EcInstanceDoc {
        let sqrt_coords = |x: &QuadInt| {
            let (a, b, den) = self.field.sqrt_coords(x);
            let den = BigInt::from(den);
            debug_assert!(a.is_multiple_of(&den) && b.is_multiple_of(&den));
            [(a / &den).to_string(), (b / &den).to_string()]
        };
        EcInstanceDoc {
            p: self.p.to_string(),
            ell: self.ell.to_string(),
            a: self.curve.a.to_string(),
            b_r: self.curve.b.to_string(),
            q: [self.q_point.0.to_string(), self.q_point.1.to_string()],
            d: self.field.radicand().to_string(),
            r: [sqrt_coords(&self.r_point.0), sqrt_coords(&self.r_point.1)],
            v_root_label: self.v.root_label.expect("split").to_string(),
            u_root_label: self.u.root_label.expect("split").to_string(),
            seed: self.seed.to_string(),
            sha_assumption: self.sha_assumption,
        }
    }

    pub fn from_doc(doc: &EcInstanceDoc) -> Result<Self> {
        fn int(s: &str) -> Result<BigInt> {
            s.trim().parse().map_err(|_| Error::Serde(format!("not an integer: {s:?}")))
        }
        fn word(s: &str) -> Result<u64> {
            s.trim().parse().map_err(|_| Error::Serde(format!("not a u64: {s:?}")))
        }
        let d: u128 = doc.d.trim().parse().map_err(|_| Error::Serde(format!("bad D: {:?}", doc.d)))?;
        let field = RealQuadField::new(d)?;
        let curve = RationalCurve::new(int(&doc.a)?, int(&doc.b_r)?)?;
        let coord = |c: &[String; 2]| -> Result<QuadInt> { Ok(field.from_sqrt_coords(int(&c[0])?, int(&c[1])?)) };
        let r_point = (coord(&doc.r[0])?, coord(&doc.r[1])?);
        let mut inst = Self::new(
            curve,
            field.clone(),
            (int(&doc.q[0])?, int(&doc.q[1])?),
            r_point,
            word(&doc.p)?,
            word(&doc.ell)?,
            word(&doc.u_root_label)?,
            word(&doc.v_root_label)?,
            word(&doc.seed)?,
        )?;
        inst.sha_assumption = doc.sha_assumption;
        Ok(inst)
    }
}

/// Serialized instance; every integer is a decimal string and R's
/// coordinates are `[x, y]` pairs meaning x + y·√D.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EcInstanceDoc {
    pub p: String,
    pub ell: String,
    pub a: String,
    pub b_r: String,
    #[serde(rename = "Q")]
    pub q: [String; 2],
    #[serde(rename = "D")]
    pub d: String,
    #[serde(rename = "R")]
    pub r: [[String; 2]; 2],
    pub v_root_label: String,
    pub u_root_label: String,
    pub seed: String,
    pub sha_assumption: bool,
}

/// x with x·den ≡ num (mod ℓ), for den a unit.
pub(crate) fn ratio(num: u64, den: u64, ell: u64) -> Result<u64> {
    let inv = inv_mod(den % ell, ell).ok_or(Error::SingularSystem)?;
    Ok(mul_mod(num % ell, inv, ell))
}

pub(crate) fn neg_mod(x: u64, ell: u64) -> u64 {
    sub_mod(0, x, ell)
}
