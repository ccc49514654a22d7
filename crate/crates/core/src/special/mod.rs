//! Numerical special functions: F, F̃, K_ν(2), the V-functions and ζ.

mod bessel;
mod ffun;
mod gamma;
mod quadrature;
mod vfun;
mod zeta;

use num_complex::Complex64;
use serde::Serialize;

pub use bessel::bessel_k2;
pub use ffun::{f_of, mellin_f, mellin_f_value, mellin_f_with, normalizer, MellinValue};
pub use gamma::{gamma, gamma_ratio, ln_gamma};
pub use quadrature::{tanh_sinh, tanh_sinh_real, trapezoid};
pub use vfun::{v_func, ContourSpec, FTildeGrid, VKernel};
pub use zeta::{hurwitz_zeta, zeta, zeta_laurent_at_one, EULER_GAMMA};

/// A numerical value with an estimate of its absolute error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimate<T> {
    pub value: T,
    pub error: f64,
}

impl<T> Estimate<T> {
    pub fn exact(value: T) -> Self {
        Self { value, error: 0.0 }
    }
}

/// f(z) = residue/(z − center) + finite_part + O(z − center).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LaurentData {
    pub residue: Complex64,
    pub finite_part: Complex64,
    pub center: Complex64,
}
