//! The cutoff function F and its Mellin transform F̃.

use num_complex::Complex64;

use super::bessel::bessel_k2;
use super::quadrature::tanh_sinh_real;
use super::{Estimate, LaurentData};
use crate::error::{Error, Result};

/// 2K₀(2) = ∫_R e^{−2cosh w} dw.
pub fn normalizer() -> Result<Estimate<f64>> {
    let k = bessel_k2(Complex64::new(0.0, 0.0))?;
    Ok(Estimate {
        value: 2.0 * k.value.re,
        error: 2.0 * k.error,
    })
}

/// ∫_a^∞ e^{−2cosh w} dw for a ≥ 0.
fn upper_tail(a: f64) -> Result<Estimate<f64>> {
    let ca = a.cosh();
    // the integrand has dropped by e^{−100} at the right end
    let b = (ca + 50.0).acosh();
    let scale = (-2.0 * ca).exp();
    tanh_sinh_real(|w| (-2.0 * w.cosh()).exp(), a, b, 1e-15 * scale.max(1e-300))
}

/// F(x) = (1/2K₀(2))∫_x^∞ e^{−t−1/t} dt/t.
pub fn f_of(x: f64) -> Result<Estimate<f64>> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("F needs x > 0, got {x}")));
    }
    let norm = normalizer()?;
    let a = x.ln();
    // substituting t = e^w; F(x) + F(1/x) = 1
    let (tail, flip) = if a >= 0.0 { (upper_tail(a)?, false) } else { (upper_tail(-a)?, true) };
    let ratio = tail.value / norm.value;
    let error = tail.error / norm.value + ratio * norm.error / norm.value;
    Ok(Estimate {
        value: if flip { 1.0 - ratio } else { ratio },
        error,
    })
}

/// F̃(s) at s ≠ 0, or the Laurent data of the simple pole at s = 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MellinValue {
    Value(Estimate<Complex64>),
    Pole(LaurentData),
}

/// F̃(s) = K_s(2)/(s·K₀(2)).
pub fn mellin_f(s: Complex64) -> Result<MellinValue> {
    if s == Complex64::new(0.0, 0.0) {
        return Ok(MellinValue::Pole(LaurentData {
            residue: Complex64::new(1.0, 0.0),
            finite_part: Complex64::new(0.0, 0.0),
            center: s,
        }));
    }
    let k0 = bessel_k2(Complex64::new(0.0, 0.0))?;
    Ok(MellinValue::Value(mellin_f_with(s, k0.value.re, k0.error)?))
}

/// F̃(s) with a precomputed K₀(2).
pub fn mellin_f_with(s: Complex64, k0: f64, k0_err: f64) -> Result<Estimate<Complex64>> {
    if s == Complex64::new(0.0, 0.0) {
        return Err(Error::Pole("s = 0".into()));
    }
    let ks = bessel_k2(s)?;
    let value = ks.value / (s * k0);
    let error = ks.error / (s.norm() * k0) + value.norm() * k0_err / k0;
    Ok(Estimate { value, error })
}

/// Value of F̃ away from the pole, failing at s = 0.
pub fn mellin_f_value(s: Complex64) -> Result<Estimate<Complex64>> {
    match mellin_f(s)? {
        MellinValue::Value(v) => Ok(v),
        MellinValue::Pole(_) => Err(Error::Pole("s = 0".into())),
    }
}


#[cfg(test)]
mod properties {
    use proptest::prelude::*;

    use super::*;

    proptest! {
        #[test]
        fn monotone_cutoff(a in -9.0f64..3.9, b in -9.0f64..3.9) {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            let f_lo = f_of(lo.exp()).unwrap().value;
            let f_hi = f_of(hi.exp()).unwrap().value;
            prop_assert!((0.0..=1.0).contains(&f_lo) && (0.0..=1.0).contains(&f_hi));
            prop_assert!(f_hi <= f_lo + 1e-15);
        }
    }
}
