//! The divisor-sum identities behind the residue and finite part of the square-case L-function.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use super::multiplicative::{divisors, factorize, mu, prime_power_base};
use crate::error::Result;
use crate::Q;

/// A formal combination Σ c_p·log p with rational coefficients, keyed by prime p.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LogCombination {
    pub coeffs: BTreeMap<u64, Q>,
}

impl LogCombination {
    /// Adds c·log n, expanded over the primes of n.
    pub fn add_log(&mut self, n: u64, c: &Q) -> Result<()> {
        if n == 1 || c.is_zero() {
            return Ok(());
        }
        for (p, e) in factorize(n)? {
            let entry = self.coeffs.entry(p).or_insert_with(Q::zero);
            *entry += c * Q::from_integer((e as i64).into());
        }
        self.coeffs.retain(|_, v| !v.is_zero());
        Ok(())
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&p, c)| (p, -c)).collect(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|(&p, c)| crate::util::q_to_f64(c) * (p as f64).ln())
            .sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }
}

fn inv(n: u64) -> Q {
    Q::new(1.into(), n.into())
}

/// Σ_{f|n} (1/f) Σ_{k|n/f} μ(k)/k.
pub fn moebius_identity_1(n: u64) -> Result<Q> {
    let mut acc = Q::zero();
    for f in divisors(n)? {
        for k in divisors(n / f)? {
            let m = mu(k)?;
            if m != 0 {
                acc += inv(f * k) * Q::from_integer(m.into());
            }
        }
    }
    Ok(acc)
}

/// The two log-weighted sums
/// (Σ_{f|n} (log f/f) Σ_{k|n/f} μ(k)/k,  Σ_{f|n} (1/f) Σ_{k|n/f} μ(k) log k/k).
pub fn moebius_identity_2(n: u64) -> Result<(LogCombination, LogCombination)> {
    let mut first = LogCombination::default();
    let mut second = LogCombination::default();
    for f in divisors(n)? {
        let mut inner = Q::zero();
        for k in divisors(n / f)? {
            let m = mu(k)?;
            if m == 0 {
                continue;
            }
            let c = inv(k) * Q::from_integer(m.into());
            inner += &c;
            second.add_log(k, &(inv(f) * &c))?;
        }
        first.add_log(f, &(inv(f) * inner))?;
    }
    Ok((first, second))
}

/// Σ_{d|n} Λ(d)/d as a formal log combination.
pub fn lambda_divisor_sum(n: u64) -> Result<LogCombination> {
    let mut acc = LogCombination::default();
    for d in divisors(n)? {
        if let Some(p) = prime_power_base(d)? {
            acc.add_log(p, &inv(d))?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_one_small() {
        assert_eq!(moebius_identity_1(1).unwrap(), Q::from_integer(1.into()));
        assert_eq!(moebius_identity_1(12).unwrap(), Q::from_integer(1.into()));
    }

    #[test]
    fn identity_two_at_twelve() {
        let (a, b) = moebius_identity_2(12).unwrap();
        let lam = lambda_divisor_sum(12).unwrap();
        // (log 2)/2 + (log 2)/4 + (log 3)/3
        let mut expect = LogCombination::default();
        expect.add_log(2, &Q::new(3.into(), 4.into())).unwrap();
        expect.add_log(3, &Q::new(1.into(), 3.into())).unwrap();
        assert_eq!(lam, expect);
        assert_eq!(a, lam);
        assert_eq!(b, lam.neg());
        let direct = 2f64.ln() / 2.0 + 2f64.ln() / 4.0 + 3f64.ln() / 3.0;
        assert!((a.to_f64() - direct).abs() < 1e-15);
    }
}

#[cfg(test)]
mod properties {
    use proptest::prelude::*;

    use super::*;

    proptest! {
        #[test]
        fn log_sums_are_negatives(n in 1u64..20_000) {
            let (first, second) = moebius_identity_2(n).unwrap();
            prop_assert_eq!(moebius_identity_1(n).unwrap(), Q::from_integer(1.into()));
            prop_assert_eq!(first, second.neg());
        }
    }
}
