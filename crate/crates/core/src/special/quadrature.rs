//! Double-exponential and trapezoidal quadrature.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use super::Estimate;
use crate::error::{Error, Result};

const MAX_LEVEL: u32 = 12;

/// Tanh–sinh quadrature of a smooth integrand on [a, b].
///
/// Halves the step until two successive levels agree to `tol` (absolute); the reported
/// error is that last difference.
pub fn tanh_sinh<F>(f: F, a: f64, b: f64, tol: f64) -> Result<Estimate<Complex64>>
where
    F: Fn(f64) -> Complex64,
{
    let c = 0.5 * (a + b);
    let d = 0.5 * (b - a);
    if d == 0.0 {
        return Ok(Estimate::exact(Complex64::new(0.0, 0.0)));
    }
    let node = |t: f64| {
        let u = FRAC_PI_2 * t.sinh();
        let ch = u.cosh();
        let w = FRAC_PI_2 * t.cosh() / (ch * ch);
        // distance from the endpoint, 1 − tanh u, without cancellation
        ((-u).exp() / ch, w)
    };
    // sum over t = j·h for j in the given stride, stopping once weights vanish
    let partial = |h: f64, odd_only: bool| {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut j: i64 = if odd_only { 1 } else { 0 };
        let stride = if odd_only { 2 } else { 1 };
        loop {
            let t = j as f64 * h;
            let (x, w) = node(t);
            if w * d < 1e-300 || t > 6.5 {
                break;
            }
            if j == 0 {
                acc += f(c) * w;
            } else {
                acc += (f(b - d * x) + f(a + d * x)) * w;
            }
            j += stride;
        }
        acc
    };
    let mut h = 1.0;
    let mut sum = partial(h, false);
    let mut prev = sum * h * d;
    for _ in 1..=MAX_LEVEL {
        h *= 0.5;
        sum += partial(h, true);
        let cur = sum * h * d;
        let diff = (cur - prev).norm();
        if diff <= tol {
            return Ok(Estimate { value: cur, error: diff });
        }
        prev = cur;
    }
    Err(Error::Quadrature {
        achieved: (sum * h * d - prev).norm(),
    })
}

/// Real-valued convenience wrapper around [`tanh_sinh`].
pub fn tanh_sinh_real<F>(f: F, a: f64, b: f64, tol: f64) -> Result<Estimate<f64>>
where
    F: Fn(f64) -> f64,
{
    let e = tanh_sinh(|x| Complex64::new(f(x), 0.0), a, b, tol)?;
    Ok(Estimate {
        value: e.value.re,
        error: e.error,
    })
}

/// Trapezoid rule on [t0, t0 + n·h] with endpoint weights ½.
pub fn trapezoid<F>(f: F, t0: f64, h: f64, n: usize) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let mut acc = (f(t0) + f(t0 + n as f64 * h)) * 0.5;
    for j in 1..n {
        acc += f(t0 + j as f64 * h);
    }
    acc * h
}
