//! The square-discriminant term Σ(□): trace enumeration, weights, and two evaluation paths.

mod enumerate;
mod paths;
mod weights;

pub use enumerate::{enumerate_square_traces, SquareTrace};
pub use paths::{sigma_square_direct, sigma_square_residue, SquareReport, TraceContribution};
pub use weights::{bump, toy_q_weight, InfWeight, QWeight, WeightSpec};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sarith::RamificationSet;
use crate::util::prime_power_q;
use crate::Q;

/// The sign in T² ∓ 4nq^ν.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl std::str::FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" | "1" | "+1" => Ok(Sign::Plus),
            "-" | "minus" | "-1" => Ok(Sign::Minus),
            _ => Err(Error::Parse(format!("sign must be + or -, got {s}"))),
        }
    }
}

/// One Σ(□) instance: n, ν, the sign, S, the weights and the k-sum policy.
#[derive(Clone, Debug)]
pub struct SquareTermInstance {
    pub n: u64,
    pub nu: Vec<i64>,
    pub sign: Sign,
    pub set: RamificationSet,
    pub weights: WeightSpec,
    pub tolerance: f64,
    /// Largest k tried per (T, f) before the tail must be certified.
    pub cutoff: u64,
}

impl SquareTermInstance {
    pub fn new(n: u64, nu: Vec<i64>, sign: Sign, set: RamificationSet, weights: WeightSpec) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("n must be positive".into()));
        }
        if let Some(prime) = set.common_prime(n) {
            return Err(Error::NotCoprimeToS { what: "n", prime });
        }
        if nu.len() != set.len() {
            return Err(Error::Domain(format!("ν needs {} entries, got {}", set.len(), nu.len())));
        }
        if weights.q.len() != set.len() {
            return Err(Error::Domain("one q-weight per prime of S is required".into()));
        }
        Ok(Self {
            n,
            nu,
            sign,
            set,
            weights,
            tolerance: 1e-10,
            cutoff: 1_000_000,
        })
    }

    /// The toy-weight instance with ν = 0.
    pub fn toy(n: u64, sign: Sign, set: &RamificationSet) -> Result<Self> {
        let nu = vec![0; set.len()];
        Self::new(n, nu, sign, set.clone(), WeightSpec::toy(set))
    }

    /// ±n·q^ν.
    pub fn signed_norm(&self) -> Q {
        let mut x = Q::from_integer((self.sign.value() * self.n as i64).into());
        for (&q, &e) in self.set.primes().iter().zip(&self.nu) {
            x *= prime_power_q(q, e);
        }
        x
    }

    /// 2√(n·q^ν), the scale in the argument of θ_∞.
    pub fn scale(&self) -> f64 {
        let mut x = self.n as f64;
        for (&q, &e) in self.set.primes().iter().zip(&self.nu) {
            x *= (q as f64).powf(e as f64);
        }
        2.0 * x.sqrt()
    }
}
