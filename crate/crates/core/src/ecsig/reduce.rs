//! The two reductions between ECDL on Ẽ(F_p) and the signature pair (α, β).
//!
//! With bases ρ_v = ρ_u = Q and ρ_u′ = R, reciprocity for Q and R reads
//! a_v + a_u·α + a_u′·β = 0 and b_v + b_u·α + b_u′·β = 0, where (a_w, b_w)
//! are the coordinates of (Q, R) against ρ_w in E(K_w)/ℓ.

use serde::{Deserialize, Serialize};

use super::instance::{neg_mod, ratio, EcSignatureInstance};
use crate::arith::dlog::bsgs_dlog;
use crate::arith::modular::{mul_mod, sub_mod};
use crate::charsig::Provenance;
use crate::ecurve::{FpCurve, FpPoint};
use crate::error::{Error, Result};

/// (α, β) ∈ F_ℓ², satisfying m + n·α + β ≡ 0 for the instance's (m, n).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EcSignature {
    pub alpha: u64,
    pub beta: u64,
    pub provenance: Provenance,
    /// log_Q̃(R̃) mod ℓ, when an oracle supplied it.
    pub m: Option<u64>,
}

/// ECDL on a prime-order curve by baby-step giant-step.
pub fn bsgs_ecdl(curve: &FpCurve, q: &FpPoint, r: &FpPoint, order: u64) -> Result<u64> {
    bsgs_dlog(curve, q, r, order)
}

/// Solves the two reciprocity relations for (α, β), with b_v = m taken
/// from `ecdl_oracle(Ẽ, Q̃, R̃)`.
pub fn signature_from_ecdl<F>(inst: &EcSignatureInstance, ecdl_oracle: F) -> Result<EcSignature>
where
    F: Fn(&FpCurve, &FpPoint, &FpPoint) -> Result<u64>,
{
    let ell = inst.ell;
    let m = ecdl_oracle(&inst.base, &inst.q_tilde, &inst.r_tilde)? % ell;
    if !inst.check_log(m) {
        return Err(Error::OracleInconsistent(format!("{m}·Q̃ ≠ R̃ on E(F_{})", inst.p)));
    }
    let [[_, q_u2], [_, r_u2]] = inst.certificate;
    let (a_v, b_v) = (1, m);
    let (a_u, b_u) = (1, inst.n());
    let (a_u2, b_u2) = (ratio(q_u2, r_u2, ell)?, 1);
    let det = sub_mod(mul_mod(a_u, b_u2, ell), mul_mod(a_u2, b_u, ell), ell);
    if det == 0 {
        return Err(Error::SingularSystem);
    }
    // Cramer's rule on [[a_u, a_u′], [b_u, b_u′]]·(α, β) = -(a_v, b_v)
    let alpha = ratio(sub_mod(mul_mod(a_u2, b_v, ell), mul_mod(a_v, b_u2, ell), ell), det, ell)?;
    let beta = ratio(sub_mod(mul_mod(b_u, a_v, ell), mul_mod(a_u, b_v, ell), ell), det, ell)?;
    debug_assert_eq!((m + mul_mod(b_u, alpha, ell) + beta) % ell, 0);
    Ok(EcSignature { alpha, beta, provenance: Provenance::DlOracle, m: Some(m) })
}

/// m ≡ -n·α - β with n from the local classes at u, checked by m·Q̃ = R̃.
pub fn ecdl_from_signature<F>(inst: &EcSignatureInstance, sig_oracle: F) -> Result<u64>
where
    F: Fn(&EcSignatureInstance) -> Result<(u64, u64)>,
{
    let ell = inst.ell;
    let n = inst.n();
    let (alpha, beta) = sig_oracle(inst)?;
    let m = neg_mod((mul_mod(n, alpha % ell, ell) + beta % ell) % ell, ell);
    if !inst.check_log(m) {
        return Err(Error::VerificationFailed(format!("{m}·Q̃ ≠ R̃ on E(F_{})", inst.p)));
    }
    Ok(m)
}
