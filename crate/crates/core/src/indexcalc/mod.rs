//! Index calculus over F_p^* modulo ℓ, and the sparse relation bookkeeping
//! shared with the quadratic variant.

mod classical;
mod relation;

pub use classical::{
    collect_relations, index_calculus_dlog, rational_character_pairing, theta, IndexCalculusParams, Site,
};
pub use relation::{solve_linear_mod_ell, Assignment, FactorBase, Relation};
