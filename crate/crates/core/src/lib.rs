//! Exact arithmetic for ℓ-adic signatures of discrete logarithms in F_p^*
//! and on elliptic curves, computed through real quadratic fields.

pub mod arith;
pub mod charsig;
pub mod ecurve;
pub mod ecsig;
pub mod error;
pub mod exec;
pub mod indexcalc;
pub mod quadfield;

pub use error::{Error, ErrorKind, Result};
pub use exec::Exec;
