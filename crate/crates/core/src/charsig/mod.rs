//! Signatures of degree-ℓ characters ramified at one place over ℓ and one
//! over p, through unit lifting into real quadratic fields.

mod index;
mod instance;
mod lift;
mod reduce;

pub use index::{signature_index_calculus, signature_relations, SigColumn, SignatureSearch};
pub use instance::{check_conditions, CharSignatureInstance, ConditionReport, InstanceDoc};
pub use lift::{lift_unit, MAX_LIFT_RETRIES};
pub use reduce::{bsgs_oracle, dl_from_signature, signature_from_dl, CharSignature, Provenance};
