//! Signatures of elliptic-curve discrete logarithms: lifting a prime-order
//! curve over F_p to a curve over a real quadratic field, the two reductions
//! between ECDL and the signature pair (α, β), and the cokernel dimensions
//! that control them.

mod coker;
mod instance;
mod lift;
mod reduce;

pub use coker::{coker_dim, local_coordinates, scan_torsion_places};
pub use instance::{EcInstanceDoc, EcSignatureInstance};
pub use lift::{find_prime_order_curve, lift_ec_instance, MAX_EC_LIFT_RETRIES};
pub use reduce::{bsgs_ecdl, ecdl_from_signature, signature_from_ecdl, EcSignature};
