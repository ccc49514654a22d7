use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::kronecker::kronecker_big;
use super::multiplicative::factorize_u128;
use super::{split_q, RamificationSet, SRational};
use crate::error::{Error, Result};
use crate::padic::modified_norm;
use crate::util::{big_to_u128, format_rational, rational_sqrt};
use crate::Q;

/// δ = σ²D together with τ_δ = (σ^(q))²D, the sign index ι and the characters ε_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discriminant {
    pub delta: SRational,
    pub sigma: SRational,
    pub fundamental: i64,
    pub tau: SRational,
    pub iota: u8,
    pub epsilon: Vec<i8>,
}

impl Discriminant {
    pub fn set(&self) -> &RamificationSet {
        self.delta.set()
    }

    /// δ is the square of a nonzero rational.
    pub fn is_square(&self) -> bool {
        self.fundamental == 1
    }

    /// |δ|′_{∞,q}, which equals |τ_δ|.
    pub fn norm_prime(&self) -> Q {
        self.tau.value().abs()
    }

    /// |δ|_∞·∏|δ|′_{q_i}, computed place by place.
    pub fn norm_prime_by_places(&self) -> Q {
        let d = self.delta.value();
        let mut acc = d.abs();
        for &q in self.set().primes() {
            acc *= modified_norm(d, q).expect("nonzero discriminant");
        }
        acc
    }

    /// σ^(q), a positive integer prime to S.
    pub fn sigma_prime_to_s(&self) -> u64 {
        let (_, rest) = split_q(self.sigma.value(), self.set()).expect("nonzero");
        rest.to_integer().to_u64().expect("σ^(q) fits in u64")
    }
}

/// Squarefree kernel with sign of a nonzero integer.
pub fn squarefree_kernel(n: &BigInt) -> Result<BigInt> {
    if n.is_zero() {
        return Err(Error::Zero);
    }
    let mut k = BigInt::one();
    for (p, e) in factorize_u128(big_to_u128(n)?)? {
        if e % 2 == 1 {
            k *= BigInt::from(p);
        }
    }
    Ok(if n.is_negative() { -k } else { k })
}

/// Write δ = σ²D with D ≡ 0,1 mod 4 fundamental and σ > 0.
pub fn decompose_discriminant(delta: &SRational) -> Result<Discriminant> {
    let d = delta.value();
    if d.is_zero() {
        return Err(Error::Zero);
    }
    if d.is_integer() {
        let r = d.numer().mod_floor(&BigInt::from(4));
        if r == BigInt::from(2) || r == BigInt::from(3) {
            return Err(Error::NotDiscriminant(format_rational(d)));
        }
    }
    let kernel = squarefree_kernel(&(d.numer() * d.denom()))?;
    let fundamental = if kernel.mod_floor(&BigInt::from(4)) == BigInt::one() {
        kernel
    } else {
        kernel * 4
    };
    let fundamental = fundamental
        .to_i64()
        .ok_or_else(|| Error::Overflow(fundamental.to_string()))?;
    let ratio = d / Q::from_integer(fundamental.into());
    let sigma = rational_sqrt(&ratio).ok_or_else(|| Error::NotSquare(format_rational(&ratio)))?;
    let set = delta.set();
    let sigma = SRational::new(sigma, set)?;
    let (sigma_q, _) = sigma.split_q()?;
    let tau = SRational::new(d / (&sigma_q * &sigma_q), set)?;
    debug_assert!(tau.is_integer());
    let epsilon = set
        .primes()
        .iter()
        .map(|&q| kronecker_big(tau.value().numer(), q as i128))
        .collect();
    Ok(Discriminant {
        delta: delta.clone(),
        sigma,
        fundamental,
        tau,
        iota: if d.is_positive() { 0 } else { 1 },
        epsilon,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dec(s: &str, primes: &[u64]) -> Discriminant {
        let set = RamificationSet::new(primes).unwrap();
        decompose_discriminant(&SRational::parse(s, &set).unwrap()).unwrap()
    }

    #[test]
    fn examples() {
        let d = dec("45", &[2]);
        assert_eq!((d.sigma.to_string(), d.fundamental), ("3".into(), 5));
        let d = dec("-4", &[2]);
        assert_eq!((d.sigma.to_string(), d.fundamental, d.iota), ("1".into(), -4, 1));
        let d = dec("12", &[2]);
        assert_eq!((d.sigma.to_string(), d.fundamental), ("1".into(), 12));
        let set = RamificationSet::two();
        assert!(matches!(
            decompose_discriminant(&SRational::from_int(7, &set)),
            Err(Error::NotDiscriminant(_))
        ));
    }

    #[test]
    fn tau_and_characters() {
        // δ = 45 with S = {∞,2,3}: σ_(q) = 3, τ = 5
        let d = dec("45", &[2, 3]);
        assert_eq!(d.tau.to_string(), "5");
        assert_eq!(d.epsilon, vec![-1, -1]);
        assert_eq!(d.norm_prime(), d.norm_prime_by_places());
        // non-integral S-rational δ = 5/4
        let d = dec("5/4", &[2]);
        assert_eq!((d.sigma.to_string(), d.fundamental), ("1/2".into(), 5));
        assert_eq!(d.tau.to_string(), "5");
    }

    #[test]
    fn agrees_with_exhaustive_square_divisor_search() {
        let set = RamificationSet::two();
        for delta in -10_000i64..=10_000 {
            if delta == 0 || matches!(delta.rem_euclid(4), 2 | 3) {
                continue;
            }
            // largest f with f² | δ and δ/f² ≡ 0,1 mod 4
            let mut best = 1i64;
            let mut f = 1i64;
            while f * f <= delta.abs() {
                if delta % (f * f) == 0 && matches!((delta / (f * f)).rem_euclid(4), 0 | 1) {
                    best = f;
                }
                f += 1;
            }
            let d = decompose_discriminant(&SRational::from_int(delta, &set)).unwrap();
            assert_eq!(d.sigma.value(), &Q::from_integer(best.into()), "δ={delta}");
            assert_eq!(d.fundamental, delta / (best * best));
            assert_eq!(d.norm_prime(), d.norm_prime_by_places(), "δ={delta}");
        }
    }
}
