//! S(a, b; c) = Σ_{x ∈ (Z/c)^×} e((ax + bx̄)/c).

use num_complex::Complex64;
use num_integer::Integer;

use super::{e_frac, PhaseSum};
use crate::util::inv_mod;

pub fn classical_kloosterman(a: i64, b: i64, c: u64) -> Complex64 {
    let c = c.max(1) as i128;
    let (a, b) = (a as i128, b as i128);
    let mut acc = PhaseSum::default();
    for x in 0..c {
        if let Some(xi) = inv_mod(x, c) {
            acc.add(e_frac(a * x + b * xi, c));
        }
    }
    acc.total()
}

/// 2·√gcd(a, b, c)·√c, the form usually quoted for prime moduli.
pub fn weil_bound(a: i64, b: i64, c: u64) -> f64 {
    let g = (a.unsigned_abs()).gcd(&b.unsigned_abs()).gcd(&c);
    2.0 * (g as f64).sqrt() * (c as f64).sqrt()
}

/// d(c)·√gcd(a, b, c)·√c, valid for every modulus.
pub fn estermann_bound(a: i64, b: i64, c: u64) -> f64 {
    let d = crate::sarith::num_divisors(c.max(1)).expect("c ≥ 1 factors") as f64;
    weil_bound(a, b, c) * d / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert!((classical_kloosterman(1, 1, 2) - 1.0).norm() < 1e-15);
        for c in 1..40u64 {
            let phi = (1..=c).filter(|&x| x.gcd(&c) == 1).count() as f64;
            assert!((classical_kloosterman(0, 0, c).re - phi).abs() < 1e-9);
        }
        let v = classical_kloosterman(1, 1, 5);
        let expect = 2.0 + 2.0 * (4.0 * std::f64::consts::PI / 5.0).cos();
        assert!((v.re - expect).abs() < 1e-12 && v.im.abs() < 1e-12);
        assert!((expect - 0.381966).abs() < 1e-6);
    }

    #[test]
    fn real_and_symmetric() {
        for c in 1..60u64 {
            for (a, b) in [(1, 3), (2, -5), (7, 7)] {
                let s = classical_kloosterman(a, b, c);
                assert!(s.im.abs() < 1e-9);
                assert!((s - classical_kloosterman(b, a, c)).norm() < 1e-9);
                assert!(s.norm() <= estermann_bound(a, b, c) + 1e-9);
            }
        }
    }

    #[test]
    fn weil_form_for_odd_prime_powers() {
        for c in [3u64, 5, 7, 9, 11, 13, 25, 27, 49, 97, 121, 125, 243, 499] {
            for a in -4i64..=4 {
                for b in [1i64, 2, 6, 9, -5] {
                    assert!(classical_kloosterman(a, b, c).norm() <= weil_bound(a, b, c) + 1e-9);
                }
            }
        }
    }

    #[test]
    fn weil_form_fails_for_some_composites() {
        // |S(a,b;39)| exceeds 2√39 for a suitable unit pair; d(c) replaces 2 in general
        let worst = (1..39)
            .flat_map(|a| (1..39).map(move |b| (a, b)))
            .map(|(a, b)| classical_kloosterman(a, b, 39).norm() / weil_bound(a, b, 39))
            .fold(0.0, f64::max);
        assert!(worst > 1.0 && worst <= 2.0);
    }
}

#[cfg(test)]
mod properties {
    use proptest::prelude::*;

    use super::*;

    proptest! {
        #[test]
        fn divisor_weil_bound_holds(a in -100_000i64..100_000, b in -100_000i64..100_000, c in 1u64..2000) {
            prop_assert!(classical_kloosterman(a, b, c).norm() <= estermann_bound(a, b, c) + 1e-9);
        }
    }
}
