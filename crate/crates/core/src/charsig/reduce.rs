//! The two reductions between discrete logarithms mod ℓ and signatures.

use serde::{Deserialize, Serialize};

use super::instance::CharSignatureInstance;
use super::lift::lift_unit;
use crate::arith::dlog::{bsgs_dlog, MulGroup};
use crate::arith::modular::{inv_mod, pow_mod};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    DlOracle,
    IndexCalculus,
}

/// Ramification signature s = σ_u/σ_v ∈ F_ℓ^*, with the quantities it was
/// derived from. Satisfies `y·s + m ≡ 0 (mod ℓ)` whenever `m` is known.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharSignature {
    pub s: u64,
    pub provenance: Provenance,
    /// log_g(α mod v) mod ℓ.
    pub m: Option<u64>,
    /// Teichmüller y-coordinate of α at u.
    pub y: u64,
}

/// Full discrete logarithm in F_p^* by baby-step giant-step.
pub fn bsgs_oracle(p: u64) -> impl Fn(u64, u64) -> Result<u64> {
    move |g, target| bsgs_dlog(&MulGroup { p }, &g, &target, p - 1)
}

/// s = -m·y⁻¹ with m supplied by a discrete-log oracle.
pub fn signature_from_dl<F>(inst: &CharSignatureInstance, dl_oracle: F) -> Result<CharSignature>
where
    F: Fn(u64, u64) -> Result<u64>,
{
    let (p, ell) = (inst.p, inst.ell);
    let full = dl_oracle(inst.g, inst.a)?;
    if pow_mod(inst.g, full, p) != inst.a {
        return Err(Error::OracleInconsistent(format!("{}^{full} ≠ {} mod {p}", inst.g, inst.a)));
    }
    let m = full % ell;
    let y = inst.y()?;
    if y == 0 {
        return Err(Error::ZeroY { ell });
    }
    if m == 0 {
        return Err(Error::ConditionsFailed("unit residue at v is an ell-th power".into()));
    }
    let s = (ell - m) * inv_mod(y, ell).expect("y ≠ 0") % ell;
    debug_assert_ne!(s, 0);
    Ok(CharSignature { s, provenance: Provenance::DlOracle, m: Some(m), y })
}

/// log_g(a) mod ℓ from a signature oracle, via m = -y·s.
pub fn dl_from_signature<F>(a: u64, g: u64, p: u64, ell: u64, sig_oracle: F, seed: u64) -> Result<u64>
where
    F: Fn(&CharSignatureInstance) -> Result<u64>,
{
    let a = a % p;
    if a == 0 {
        return Err(Error::NotAUnit { x: "0".into(), modulus: p });
    }
    if !(p - 1).is_multiple_of(ell) {
        return Err(Error::BadInput(format!("{ell} does not divide {p} - 1")));
    }
    let e = (p - 1) / ell;
    if pow_mod(a, e, p) == 1 {
        return Ok(0);
    }
    let inst = lift_unit(a, p, ell, g, seed)?;
    let y = inst.y()?;
    let s = sig_oracle(&inst)? % ell;
    let m = (ell - y * s % ell) % ell;
    if !inst.check_log(a, m) {
        return Err(Error::VerificationFailed(format!("log of {a} mod {ell} from signature {s}")));
    }
    Ok(m)
}
