//! Riemann and Hurwitz zeta functions by Euler–Maclaurin summation.

use num_complex::Complex64;

use super::{Estimate, LaurentData};
use crate::error::{Error, Result};

/// Euler–Mascheroni constant, the finite part of ζ at s = 1.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

// B_{2j}/(2j)! for j = 1..12
const BERNOULLI_OVER_FACT: [f64; 12] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0,
    77683.0 / 14101100039391805440000.0,
    -236364091.0 / 1693824136731743669452800000.0,
];

/// ζ(s, a) = Σ_{n≥0} (n + a)^{−s} for s ≠ 1, a > 0.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<Estimate<Complex64>> {
    if !(a > 0.0) {
        return Err(Error::Domain(format!("Hurwitz parameter a = {a} must be positive")));
    }
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole("s = 1".into()));
    }
    let target = s.norm() + 15.0;
    let n = (target - a).ceil().max(0.0) as usize;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut mag = 0.0;
    for k in 0..n {
        let term = (-s * (k as f64 + a).ln()).exp();
        mag += term.norm();
        sum += term;
    }
    let big = n as f64 + a;
    let lnb = big.ln();
    let pow = |e: Complex64| (e * lnb).exp();
    sum += pow(1.0 - s) / (s - 1.0) + 0.5 * pow(-s);
    // rising factorial s(s+1)…(s+2j−2) times big^{−s−2j+1}
    let mut rising = s;
    let mut power = pow(-s - 1.0);
    let mut last = Complex64::new(0.0, 0.0);
    for (j, c) in BERNOULLI_OVER_FACT.iter().enumerate() {
        last = rising * power * *c;
        sum += last;
        let k = (2 * j) as f64;
        rising *= (s + k + 1.0) * (s + k + 2.0);
        power /= big * big;
    }
    let error = last.norm() * (s.norm() + 26.0) / (s.re + 25.0).max(1.0) + 4.0 * f64::EPSILON * (mag + sum.norm());
    Ok(Estimate { value: sum, error })
}

/// ζ(s) for s ≠ 1.
pub fn zeta(s: Complex64) -> Result<Estimate<Complex64>> {
    hurwitz_zeta(s, 1.0)
}

/// Laurent data of ζ at its pole: residue 1, finite part γ.
pub fn zeta_laurent_at_one() -> LaurentData {
    LaurentData {
        residue: Complex64::new(1.0, 0.0),
        finite_part: Complex64::new(EULER_GAMMA, 0.0),
        center: Complex64::new(1.0, 0.0),
    }
}
