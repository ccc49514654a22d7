//! Traces T ∈ Z^S with T² ∓ 4nq^ν a nonzero square, via (T+σ)(T−σ) = ±4nq^ν.

use num_traits::Signed;
use serde::Serialize;

use super::SquareTermInstance;
use crate::error::Result;
use crate::padic::valuation;
use crate::sarith::divisors;
use crate::util::{format_rational, prime_power_q};
use crate::Q;

/// T = X + Y and σ = X − Y > 0 with X = ε₁n₁q^α, Y = ε₂n₂q^β, n₁n₂ = n, α + β = ν.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareTrace {
    #[serde(serialize_with = "ser_q")]
    pub t: Q,
    #[serde(serialize_with = "ser_q")]
    pub sigma: Q,
    pub n1: u64,
    pub n2: u64,
    pub eps1: i8,
    pub eps2: i8,
    pub alpha: Vec<i64>,
    pub beta: Vec<i64>,
}

fn ser_q<S: serde::Serializer>(q: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

impl SquareTrace {
    /// δ = T² ∓ 4nq^ν = σ².
    pub fn delta(&self) -> Q {
        &self.sigma * &self.sigma
    }
}

/// Candidate exponents α for one prime: [−M, ν+M], plus ν/2 when ν is even.
fn alpha_range(nu: i64, m: i64) -> Vec<i64> {
    let mut out: Vec<i64> = (-m..=nu + m).collect();
    if nu % 2 == 0 && !out.contains(&(nu / 2)) {
        out.push(nu / 2);
    }
    out
}

/// Every trace with v_{q_i}(T) ≥ −M_i, each listed once, sorted by T.
pub fn enumerate_square_traces(inst: &SquareTermInstance) -> Result<Vec<SquareTrace>> {
    let primes = inst.set.primes();
    let supports = inst.weights.q_support();
    let ranges: Vec<Vec<i64>> = inst.nu.iter().zip(&supports).map(|(&nu, &m)| alpha_range(nu, m)).collect();
    // cartesian product of the per-prime ranges
    let mut alphas: Vec<Vec<i64>> = vec![vec![]];
    for r in &ranges {
        alphas = alphas
            .into_iter()
            .flat_map(|a| r.iter().map(move |&x| [a.clone(), vec![x]].concat()))
            .collect();
    }
    let mut out = Vec::new();
    for n1 in divisors(inst.n)? {
        let n2 = inst.n / n1;
        for alpha in &alphas {
            let beta: Vec<i64> = inst.nu.iter().zip(alpha).map(|(&nu, &a)| nu - a).collect();
            let mut qa = Q::from_integer(1.into());
            let mut qb = Q::from_integer(1.into());
            for (i, &q) in primes.iter().enumerate() {
                qa *= prime_power_q(q, alpha[i]);
                qb *= prime_power_q(q, beta[i]);
            }
            for eps1 in [1i8, -1] {
                let eps2 = eps1 * inst.sign.value() as i8;
                let x = Q::from_integer((eps1 as i64 * n1 as i64).into()) * &qa;
                let y = Q::from_integer((eps2 as i64 * n2 as i64).into()) * &qb;
                let sigma = &x - &y;
                if !sigma.is_positive() {
                    continue;
                }
                let t = &x + &y;
                let supported = primes.iter().zip(&supports).all(|(&q, &m)| match valuation(&t, q) {
                    None => true,
                    Some(v) => v >= -m,
                });
                if supported {
                    out.push(SquareTrace {
                        t,
                        sigma,
                        n1,
                        n2,
                        eps1,
                        eps2,
                        alpha: alpha.clone(),
                        beta: beta.clone(),
                    });
                }
            }
        }
    }
    out.sort_by(|a, b| a.t.cmp(&b.t));
    debug_assert!(out.windows(2).all(|w| w[0].t != w[1].t));
    Ok(out)
}
