//! Arithmetic and analytic kernels for the elliptic terms of the GL(2) trace formula
//! with ramification at a finite set of primes S.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod kloosterman;
pub mod padic;
pub mod sarith;
pub mod special;
pub mod square;
pub mod zagier;
mod util;

pub use error::{Error, Result};

/// Exact rationals used throughout.
pub type Q = num_rational::BigRational;

pub use util::{format_rational, parse_rational, q_to_f64};
