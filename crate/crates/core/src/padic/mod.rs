//! Exact and truncated ℓ-adic arithmetic, characters and local integrals.

mod approx;
mod integrate;
mod norm;
mod singular;

pub use approx::{residue_mod_power, sqrt_padic, valuation, PadicApprox, DEFAULT_PRECISION};
pub use integrate::{padic_integrate, padic_integrate_checked, Region, RegionKind};
pub use norm::{e_ell, frac_part, gauss_sum, modified_norm, omega_ell, unit_root, unit_root_u64};
pub use singular::{
    admissible_cutoff, e_ell_approx, j_singular, j_singular_brute, singular_tail_bound,
    LocalSingularParams, SingularDecomposition, SingularTerm,
};
