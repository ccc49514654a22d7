//! K_ν(2) for complex order ν.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use super::Estimate;
use crate::error::{Error, Result};

const X: f64 = 2.0;

/// K_ν(2) = ½∫_R exp(−2cosh t + νt) dt, evaluated by the trapezoid rule.
///
/// For large |Im ν| the line is moved to Im t = α with |α| close to π/2: on the original
/// line the integrand is of size 1 while the value is of size e^{−π|Im ν|/2}.
pub fn bessel_k2(nu: Complex64) -> Result<Estimate<Complex64>> {
    // K_ν = K_{−ν}: work with Re ν ≥ 0
    let nu = if nu.re < 0.0 { -nu } else { nu };
    let tau = nu.im.abs();
    let delta = if tau > 0.0 { (2.0 / tau).min(FRAC_PI_2) } else { FRAC_PI_2 };
    let alpha = nu.im.signum() * (FRAC_PI_2 - delta);
    let ca = alpha.cos();
    let shift = Complex64::new(0.0, alpha);
    let integrand = |t: f64| {
        let z = Complex64::new(t, 0.0) + shift;
        (-X * z.cosh() + nu * z).exp()
    };
    // log-magnitude along the shifted line and its maximizer
    let log_mag = |t: f64| -X * ca * t.cosh() + nu.re * t - nu.im * alpha;
    let t_star = (nu.re / (X * ca)).asinh();
    let peak = log_mag(t_star);
    let cut = peak - 46.0;
    let mut hi = t_star;
    while log_mag(hi) > cut {
        hi += 0.25;
    }
    let mut lo = t_star;
    while log_mag(lo) > cut {
        lo -= 0.25;
    }
    let mut h = (delta / 8.0).min(0.125);
    let mut n = ((hi - lo) / h).ceil() as usize;
    let mut sum: Complex64 = (0..=n).map(|j| integrand(lo + j as f64 * h)).sum();
    let mut prev = sum * h * 0.5;
    for _ in 0..6 {
        // midpoints of the current grid
        let mids: Complex64 = (0..n).map(|j| integrand(lo + (j as f64 + 0.5) * h)).sum();
        sum += mids;
        h *= 0.5;
        n *= 2;
        let cur = sum * h * 0.5;
        let diff = (cur - prev).norm();
        let scale = (peak.exp() * (hi - lo)).max(cur.norm());
        if diff <= 1e-15 * scale || diff <= 1e-14 * cur.norm() {
            return Ok(Estimate {
                value: cur,
                error: diff.max(2.0 * f64::EPSILON * scale),
            });
        }
        prev = cur;
    }
    Err(Error::Quadrature {
        achieved: (sum * h * 0.5 - prev).norm(),
    })
}
