//! Exact modular, q-adic and generic discrete-log primitives.

pub mod dlog;
pub mod linalg;
pub mod modular;
pub mod padic;
pub mod smooth;

pub use dlog::{bsgs_dlog, ell_power_residue_test, Group, MulGroup};
pub use linalg::{rank_mod_ell, solve_mod_ell, Solution};
pub use padic::{hensel_sqrt, teichmuller, PadicApprox, TeichmullerDecomp};
pub use smooth::{factor_over, factor_smooth, squarefree_decomposition};
