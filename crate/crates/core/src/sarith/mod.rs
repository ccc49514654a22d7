//! Arithmetic over the ring of S-integers.

mod discriminant;
mod height;
mod kronecker;
mod moebius;
mod multiplicative;
mod ramification;
mod solvable;
mod srational;

pub use discriminant::{decompose_discriminant, squarefree_kernel, Discriminant};
pub use height::{
    height, height_exact, height_sum_large, height_sum_small, HeightSumReport, LargeSumMode,
    SumCutoffs,
};
pub use kronecker::{jacobi, kronecker, kronecker_big, kronecker_rational, legendre};
pub use moebius::{lambda_divisor_sum, moebius_identity_1, moebius_identity_2, LogCombination};
pub use multiplicative::{
    divisors, euler_phi, factorize, is_prime, lambda_vm, mu, num_divisors, num_prime_divisors,
    prime_power_base, radical, vp_u64,
};
pub use ramification::RamificationSet;
pub use solvable::{solvable, solvable_mod};
pub use srational::{split_q, split_valuation, SRational};
