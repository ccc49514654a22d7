use std::fmt;
use std::str::FromStr;

use super::multiplicative::is_prime;
use crate::error::{Error, Result};

/// The finite primes q_1, ..., q_r of S; the archimedean place is implicit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RamificationSet {
    primes: Vec<u64>,
}

impl RamificationSet {
    pub fn new(primes: &[u64]) -> Result<Self> {
        let mut seen = Vec::with_capacity(primes.len());
        for &p in primes {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            if seen.contains(&p) {
                return Err(Error::RepeatedPrime(p));
            }
            seen.push(p);
        }
        if !seen.contains(&2) {
            return Err(Error::MissingTwo);
        }
        Ok(Self { primes: seen })
    }

    /// S = {∞, 2}.
    pub fn two() -> Self {
        Self { primes: vec![2] }
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.contains(&p)
    }

    /// First q_i dividing n, if any.
    pub fn common_prime(&self, n: u64) -> Option<u64> {
        self.primes.iter().copied().find(|&q| n.is_multiple_of(q))
    }

    pub fn is_coprime(&self, n: u64) -> bool {
        self.common_prime(n).is_none()
    }

    /// n with every q_i removed.
    pub fn strip(&self, mut n: u64) -> u64 {
        for &q in &self.primes {
            while n != 0 && n.is_multiple_of(q) {
                n /= q;
            }
        }
        n
    }

    pub fn product(&self) -> u64 {
        self.primes.iter().product()
    }
}

impl FromStr for RamificationSet {
    type Err = Error;

    /// Accepts "2,3" or "inf,2,3" (braces and spaces ignored).
    fn from_str(s: &str) -> Result<Self> {
        let mut primes = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim().trim_matches(|c| c == '{' || c == '}').trim();
            if tok.is_empty() || tok == "inf" || tok == "∞" {
                continue;
            }
            primes.push(
                tok.parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad prime {tok:?} in S")))?,
            );
        }
        Self::new(&primes)
    }
}

impl fmt::Display for RamificationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{inf")?;
        for p in &self.primes {
            write!(f, ",{p}")?;
        }
        write!(f, "}}")
    }
}
