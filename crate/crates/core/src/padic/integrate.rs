//! Brute-force ℓ-adic integration of locally constant functions.

use num_bigint::BigInt;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::util::prime_power_q;
use crate::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegionKind {
    /// center + ℓ^e·Z_ℓ
    Ball,
    /// center + ℓ^e·Z_ℓ^×
    Shell,
}

/// A ball or shell, cut into residue classes modulo ℓ^depth.
#[derive(Clone, Debug, PartialEq)]
pub struct Region {
    pub kind: RegionKind,
    pub center: Q,
    pub exponent: i64,
    pub depth: i64,
}

impl Region {
    pub fn ball(center: Q, exponent: i64, depth: i64) -> Self {
        Self {
            kind: RegionKind::Ball,
            center,
            exponent,
            depth,
        }
    }

    pub fn shell(center: Q, exponent: i64, depth: i64) -> Self {
        Self {
            kind: RegionKind::Shell,
            center,
            exponent,
            depth,
        }
    }

    fn deeper(&self, extra: i64) -> Self {
        Self {
            depth: self.depth + extra,
            ..self.clone()
        }
    }
}

/// Riemann sum over residue classes, Haar measure with vol(Z_ℓ) = 1.
///
/// The integrand is sampled at one representative per class; it must be constant on
/// each class for the result to be exact.
pub fn padic_integrate<F>(prime: u64, regions: &[Region], mut f: F) -> Result<Complex64>
where
    F: FnMut(&Q) -> Complex64,
{
    let mut total = Complex64::new(0.0, 0.0);
    for region in regions {
        let span = region.depth - region.exponent;
        if span < 0 {
            return Err(Error::Depth { depth: region.depth });
        }
        let count = prime
            .checked_pow(span as u32)
            .ok_or_else(|| Error::Overflow(format!("{prime}^{span} classes")))?;
        let step = prime_power_q(prime, region.exponent);
        let weight = (prime as f64).powi(-(region.depth as i32));
        let mut part = Complex64::new(0.0, 0.0);
        for j in 0..count {
            if region.kind == RegionKind::Shell && j % prime == 0 {
                continue;
            }
            let y = &region.center + &step * Q::from_integer(BigInt::from(j));
            part += f(&y);
        }
        total += part * weight;
    }
    Ok(total)
}

/// Integrates at the declared depths and one level deeper; disagreement beyond `tol`
/// means the integrand was not locally constant at the declared depth.
pub fn padic_integrate_checked<F>(prime: u64, regions: &[Region], tol: f64, mut f: F) -> Result<Complex64>
where
    F: FnMut(&Q) -> Complex64,
{
    let coarse = padic_integrate(prime, regions, &mut f)?;
    let finer: Vec<Region> = regions.iter().map(|r| r.deeper(1)).collect();
    let fine = padic_integrate(prime, &finer, &mut f)?;
    if (coarse - fine).norm() > tol {
        let depth = regions.iter().map(|r| r.depth).min().unwrap_or(0);
        return Err(Error::Depth { depth });
    }
    Ok(fine)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::valuation;

    fn zero() -> Q {
        Q::from_integer(0.into())
    }

    #[test]
    fn normalization() {
        let one = |_: &Q| Complex64::new(1.0, 0.0);
        for l in [2u64, 3, 5, 7] {
            let v = padic_integrate(l, &[Region::ball(zero(), 0, 3)], one).unwrap();
            assert!((v.re - 1.0).abs() < 1e-14);
            let v = padic_integrate(l, &[Region::shell(zero(), 0, 2)], one).unwrap();
            assert!((v.re - (1.0 - 1.0 / l as f64)).abs() < 1e-14);
        }
    }

    #[test]
    fn absolute_value_power() {
        // ∫_{Z_3} |y|_3 dy = (1 − 1/3)/(1 − 3^{-2}) = 3/4
        let shells: Vec<Region> = (0..30).map(|u| Region::shell(zero(), u, u + 1)).collect();
        let v = padic_integrate(3, &shells, |y| {
            let v = valuation(y, 3).unwrap();
            Complex64::new(3f64.powi(-(v as i32)), 0.0)
        })
        .unwrap();
        assert!((v.re - 0.75).abs() < 1e-12, "{v}");
    }

    #[test]
    fn depth_check_catches_unresolved_integrand() {
        // e_3(y/9) is not constant modulo 3
        let f = |y: &Q| crate::padic::e_ell(&(y / Q::from_integer(9.into())), 3);
        let r = padic_integrate_checked(3, &[Region::ball(zero(), 0, 1)], 1e-12, f);
        assert!(matches!(r, Err(Error::Depth { .. })));
        let ok = padic_integrate_checked(3, &[Region::ball(zero(), 0, 2)], 1e-12, f).unwrap();
        assert!(ok.norm() < 1e-12);
        assert_eq!(padic_integrate(3, &[Region::ball(zero(), 2, 1)], f), Err(Error::Depth { depth: 1 }));
    }
}
