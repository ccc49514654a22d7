//! Complex log-gamma by Stirling's series with upward shift and reflection.

use std::f64::consts::PI;

use num_complex::Complex64;

// B_{2k}/(2k(2k−1)) for k = 1..10
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

/// log sin(πz), stable for large |Im z|; the branch is arbitrary.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    if z.im > 0.0 {
        // sin πz = e^{−iπz}(e^{2iπz} − 1)/(2i)
        -i * PI * z + ((2.0 * i * PI * z).exp() - 1.0).ln() - (2.0 * i).ln()
    } else if z.im < 0.0 {
        i * PI * z + (1.0 - (-2.0 * i * PI * z).exp()).ln() - (2.0 * i).ln()
    } else {
        Complex64::new((PI * z.re).sin(), 0.0).ln()
    }
}

/// log Γ(z) up to an additive multiple of 2πi. Poles give an infinite real part.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        if z.im == 0.0 && z.re == z.re.round() {
            return Complex64::new(f64::INFINITY, 0.0);
        }
        return Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z) - ln_gamma(1.0 - z);
    }
    let mut z = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while z.norm() < 15.0 {
        shift += z.ln();
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for c in STIRLING {
        series += pow * c;
        pow *= inv2;
    }
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series - shift
}

/// Γ(a)/Γ(b) through log-gamma, so intermediate overflow is avoided.
pub fn gamma_ratio(a: Complex64, b: Complex64) -> Complex64 {
    let la = ln_gamma(a);
    let lb = ln_gamma(b);
    if lb.re.is_infinite() {
        return Complex64::new(0.0, 0.0);
    }
    (la - lb).exp()
}

pub fn gamma(z: Complex64) -> Complex64 {
    ln_gamma(z).exp()
}
