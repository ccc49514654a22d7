use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::RamificationSet;
use crate::error::{Error, Result};
use crate::padic::valuation;
use crate::util::{format_rational, parse_rational, prime_power_q};
use crate::Q;

/// An element of Z^S: a reduced rational whose denominator only involves primes of S.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SRational {
    value: Q,
    set: RamificationSet,
}

impl SRational {
    pub fn new(value: Q, set: &RamificationSet) -> Result<Self> {
        let mut den = value.denom().clone();
        for &q in set.primes() {
            let qb = BigInt::from(q);
            while (&den % &qb).is_zero() {
                den /= &qb;
            }
        }
        if !den.is_one() {
            let prime = smallest_prime_factor(&den);
            return Err(Error::NotSInteger {
                value: format_rational(&value),
                prime,
            });
        }
        Ok(Self {
            value,
            set: set.clone(),
        })
    }

    pub fn from_int(n: i64, set: &RamificationSet) -> Self {
        Self {
            value: Q::from_integer(n.into()),
            set: set.clone(),
        }
    }

    pub fn parse(s: &str, set: &RamificationSet) -> Result<Self> {
        Self::new(parse_rational(s)?, set)
    }

    pub fn value(&self) -> &Q {
        &self.value
    }

    pub fn set(&self) -> &RamificationSet {
        &self.set
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.value.is_integer()
    }

    pub fn to_f64(&self) -> f64 {
        crate::util::q_to_f64(&self.value)
    }

    /// Same value in a (possibly) different ramification set.
    pub fn with_set(&self, set: &RamificationSet) -> Result<Self> {
        Self::new(self.value.clone(), set)
    }

    pub fn map(&self, f: impl FnOnce(&Q) -> Q) -> Result<Self> {
        Self::new(f(&self.value), &self.set)
    }

    /// (a_(ℓ), a^(ℓ)).
    pub fn split_valuation(&self, l: u64) -> Result<(Q, Q)> {
        split_valuation(&self.value, l)
    }

    /// (a_(q), a^(q)).
    pub fn split_q(&self) -> Result<(Q, Q)> {
        split_q(&self.value, &self.set)
    }
}

impl fmt::Display for SRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.value))
    }
}

fn smallest_prime_factor(n: &BigInt) -> u64 {
    let n = n.abs();
    let mut p = BigInt::from(2u8);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            return p.to_u64().unwrap_or(0);
        }
        p += 1;
    }
    n.to_u64().unwrap_or(0)
}

/// a = a_(ℓ)·a^(ℓ) with a_(ℓ) = ℓ^{v_ℓ(a)}.
pub fn split_valuation(a: &Q, l: u64) -> Result<(Q, Q)> {
    let v = valuation(a, l).ok_or(Error::Zero)?;
    let part = prime_power_q(l, v);
    let rest = a / &part;
    Ok((part, rest))
}

/// a = a_(q)·a^(q), the q-part being the product of the q_i-parts.
pub fn split_q(a: &Q, set: &RamificationSet) -> Result<(Q, Q)> {
    if a.is_zero() {
        return Err(Error::Zero);
    }
    let mut part = Q::one();
    for &q in set.primes() {
        part *= split_valuation(a, q)?.0;
    }
    let rest = a / &part;
    Ok((part, rest))
}
