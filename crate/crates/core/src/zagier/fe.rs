//! The functional-equation factor relating L^S(s, δ) and L^S(1 − s, δ).

use std::f64::consts::PI;

use num_complex::Complex64;

use super::norm_f64;
use crate::error::{Error, Result};
use crate::sarith::Discriminant;
use crate::special::gamma_ratio;

const COLLISION: f64 = 1e-12;

/// (|δ|′/π)^{1/2−s}·∏(1 − ε_i q_i^{−s})/(1 − ε_i q_i^{s−1})·Γ((ι+1−s)/2)/Γ((ι+s)/2).
///
/// For square δ the decomposition already yields ι = 0 and every ε_i = 1.
pub fn fe_factor(s: Complex64, d: &Discriminant) -> Result<Complex64> {
    let iota = d.iota as f64;
    let a = (iota + 1.0 - s) * 0.5;
    let nearest = a.re.round();
    if nearest <= 0.0 && (a - nearest).norm() < COLLISION {
        return Err(Error::Pole(format!("Γ((ι+1−s)/2) has a pole at s = {s}")));
    }
    let one = Complex64::new(1.0, 0.0);
    let mut value = ((0.5 - s) * (norm_f64(d) / PI).ln()).exp();
    for (&e, &q) in d.epsilon.iter().zip(d.set().primes()) {
        if e == 0 {
            continue;
        }
        let lq = (q as f64).ln();
        let den = one - e as f64 * ((s - 1.0) * lq).exp();
        if den.norm() < COLLISION {
            return Err(Error::Pole(format!("1 − ε q^(s−1) vanishes at s = {s} for q = {q}")));
        }
        value *= (one - e as f64 * (-s * lq).exp()) / den;
    }
    Ok(value * gamma_ratio(a, (iota + s) * 0.5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sarith::{decompose_discriminant, RamificationSet, SRational};

    fn disc(n: i64, primes: &[u64]) -> Discriminant {
        let set = RamificationSet::new(primes).unwrap();
        decompose_discriminant(&SRational::from_int(n, &set)).unwrap()
    }

    #[test]
    fn involution() {
        for n in [-3, -4, 5, -7, 13, -8, 12, 1, 9] {
            for primes in [&[2u64][..], &[2, 3]] {
                let d = disc(n, primes);
                for s in [Complex64::new(0.3, 0.7), Complex64::new(-1.2, 2.5), Complex64::new(0.5, 11.0)] {
                    let p = fe_factor(s, &d).unwrap() * fe_factor(1.0 - s, &d).unwrap();
                    assert!((p - 1.0).norm() < 1e-10, "δ={n} s={s}: {p}");
                }
            }
        }
    }

    #[test]
    fn centre_has_no_norm_power() {
        let d = disc(-7, &[2]);
        let s = Complex64::new(0.5, 0.0);
        let f = fe_factor(s, &d).unwrap();
        // ε_2 = (−7/2) = 1 and ι = 1: remaining factor is (1−2^{−1/2})/(1−2^{−1/2})·Γ(3/4)/Γ(3/4)
        assert!((f - 1.0).norm() < 1e-14);
    }

    #[test]
    fn collisions_rejected() {
        let d = disc(5, &[2]);
        // ι = 0 and Γ((1−s)/2) has a pole at s = 1
        assert!(matches!(fe_factor(Complex64::new(3.0, 0.0), &d), Err(Error::Pole(_))));
        let d = disc(-7, &[2]);
        // ε_2 = 1: 1 − 2^{s−1} = 0 at s = 1 + 2πi/ln 2
        let s = Complex64::new(1.0, 2.0 * PI / 2f64.ln());
        assert!(matches!(fe_factor(s, &d), Err(Error::Pole(_))));
    }
}

#[cfg(test)]
mod properties {
    use proptest::prelude::*;

    use super::*;
    use crate::sarith::{decompose_discriminant, SRational};
    use crate::util::strategies::s_set;

    proptest! {
        #[test]
        fn involution(d in -500i64..500, re in -3.0f64..4.0, im in -20.0f64..20.0, s in s_set()) {
            prop_assume!(d != 0 && d.rem_euclid(4) <= 1);
            let dec = decompose_discriminant(&SRational::from_int(d, &s)).unwrap();
            prop_assume!(!dec.is_square());
            let z = Complex64::new(re, im);
            if let (Ok(a), Ok(b)) = (fe_factor(z, &dec), fe_factor(1.0 - z, &dec)) {
                prop_assert!((a * b - 1.0).norm() < 1e-10, "{}", (a * b - 1.0).norm());
            }
        }
    }
}
