use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::sarith::legendre;
use crate::util::{prime_power_q, rational_mod};
use crate::Q;

/// Default number of ℓ-adic digits kept by [`PadicApprox`].
pub const DEFAULT_PRECISION: u32 = 32;

/// v_ℓ(x); `None` stands for +∞ (x = 0).
pub fn valuation(x: &Q, l: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let lb = BigInt::from(l);
    let count = |n: &BigInt| {
        let mut n = n.clone();
        let mut e = 0i64;
        while (&n % &lb).is_zero() {
            n /= &lb;
            e += 1;
        }
        e
    };
    Some(count(x.numer()) - count(x.denom()))
}

/// A truncated ℓ-adic number ℓ^v·unit with the unit known modulo ℓ^precision.
#[derive(Clone, Debug)]
pub struct PadicApprox {
    prime: u64,
    valuation: Option<i64>,
    unit: BigInt,
    precision: u32,
}

impl PadicApprox {
    pub fn new(prime: u64, valuation: i64, unit: BigInt, precision: u32) -> Result<Self> {
        if precision == 0 {
            return Err(Error::Domain("precision must be positive".into()));
        }
        let modulus = BigInt::from(prime).pow(precision);
        let unit = unit.mod_floor(&modulus);
        if (&unit % BigInt::from(prime)).is_zero() {
            return Err(Error::Domain(format!("unit {unit} is divisible by {prime}")));
        }
        Ok(Self {
            prime,
            valuation: Some(valuation),
            unit,
            precision,
        })
    }

    pub fn zero(prime: u64, precision: u32) -> Self {
        Self {
            prime,
            valuation: None,
            unit: BigInt::zero(),
            precision,
        }
    }

    pub fn from_rational(x: &Q, prime: u64, precision: u32) -> Self {
        let Some(v) = valuation(x, prime) else {
            return Self::zero(prime, precision);
        };
        let u = x / prime_power_q(prime, v);
        let modulus = BigInt::from(prime).pow(precision);
        let inv = u
            .denom()
            .extended_gcd(&modulus)
            .x
            .mod_floor(&modulus);
        let unit = (u.numer() * inv).mod_floor(&modulus);
        Self {
            prime,
            valuation: Some(v),
            unit,
            precision,
        }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn valuation(&self) -> Option<i64> {
        self.valuation
    }

    pub fn unit(&self) -> &BigInt {
        &self.unit
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn is_zero(&self) -> bool {
        self.valuation.is_none()
    }

    /// Unit part reduced modulo ℓ^k (k ≤ precision).
    pub fn unit_mod(&self, k: u32) -> BigInt {
        self.unit.mod_floor(&BigInt::from(self.prime).pow(k.min(self.precision)))
    }

    /// The rational ℓ^v·unit representing this approximation.
    pub fn to_rational(&self) -> Q {
        match self.valuation {
            None => Q::zero(),
            Some(v) => prime_power_q(self.prime, v) * Q::from_integer(self.unit.clone()),
        }
    }

    pub fn neg(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let modulus = BigInt::from(self.prime).pow(self.precision);
        Self {
            unit: (-&self.unit).mod_floor(&modulus),
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.prime, other.prime, "mixed primes");
        let precision = self.precision.min(other.precision);
        match (self.valuation, other.valuation) {
            (Some(a), Some(b)) => {
                let modulus = BigInt::from(self.prime).pow(precision);
                Self {
                    prime: self.prime,
                    valuation: Some(a + b),
                    unit: (&self.unit * &other.unit).mod_floor(&modulus),
                    precision,
                }
            }
            _ => Self::zero(self.prime, precision),
        }
    }

    pub fn mul_rational(&self, x: &Q) -> Self {
        self.mul(&Self::from_rational(x, self.prime, self.precision))
    }

    /// |y|′_ℓ of this number (must be nonzero).
    pub fn modified_norm(&self) -> Result<Q> {
        let v = self.valuation.ok_or(Error::Zero)?;
        let residue = self.unit_mod(2).to_u64().unwrap_or(0);
        Ok(super::norm::modified_norm_parts(self.prime, v, residue))
    }
}

impl PartialEq for PadicApprox {
    fn eq(&self, other: &Self) -> bool {
        if self.prime != other.prime || self.valuation != other.valuation {
            return false;
        }
        let k = self.precision.min(other.precision);
        self.unit_mod(k) == other.unit_mod(k)
    }
}

impl fmt::Display for PadicApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.valuation {
            None => write!(f, "0 (mod {}^{})", self.prime, self.precision),
            Some(v) => write!(
                f,
                "{}^{}·{} (mod {}^{})",
                self.prime, v, self.unit, self.prime, self.precision
            ),
        }
    }
}

/// A square root of the unit u modulo the odd prime p, by Tonelli–Shanks.
fn sqrt_mod_prime(u: u64, p: u64) -> Option<u64> {
    use crate::util::{mul_mod, pow_mod};
    let u = u % p;
    if u == 0 {
        return Some(0);
    }
    if legendre(u as i128, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(u, (p + 1) / 4, p));
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| legendre(z as i128, p) == -1)?;
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(u, q, p);
    let mut r = pow_mod(u, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// A square root of N in Q_ℓ to the given precision, or `None` when N is not a square there.
pub fn sqrt_padic(n: &Q, l: u64, precision: u32) -> Result<Option<PadicApprox>> {
    let v = valuation(n, l).ok_or(Error::Zero)?;
    if v % 2 != 0 {
        return Ok(None);
    }
    let work = precision + 2;
    let x = PadicApprox::from_rational(n, l, work);
    let lb = BigInt::from(l);
    let root = if l == 2 {
        if (x.unit() % 8u32) != BigInt::one() {
            return Ok(None);
        }
        // r² ≡ u (mod 2^k), refined one bit at a time
        let mut r = BigInt::one();
        for k in 3..work {
            let m = BigInt::one() << (k + 1);
            if (&r * &r - x.unit()).mod_floor(&m) != BigInt::zero() {
                r += BigInt::one() << (k - 1);
            }
        }
        r
    } else {
        let u0 = (x.unit() % &lb).to_u64().unwrap();
        let Some(r0) = sqrt_mod_prime(u0, l) else {
            return Ok(None);
        };
        // Hensel: r ← r − (r² − u)/(2r), doubling the digits each round
        let mut r = BigInt::from(r0);
        let mut k = 1u32;
        while k < work {
            k = (2 * k).min(work);
            let m = lb.pow(k);
            let f = (&r * &r - x.unit()).mod_floor(&m);
            let inv = (BigInt::from(2) * &r).extended_gcd(&m).x.mod_floor(&m);
            r = (&r - f * inv).mod_floor(&m);
        }
        r
    };
    let out = PadicApprox::new(l, v / 2, root, precision)?;
    Ok(Some(out))
}

/// Residue of a rational modulo ℓ^k when it is ℓ-integral.
pub fn residue_mod_power(x: &Q, l: u64, k: u32) -> Option<u64> {
    rational_mod(x, l.checked_pow(k)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::parse_rational;

    fn q(s: &str) -> Q {
        parse_rational(s).unwrap()
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&q("12"), 2), Some(2));
        assert_eq!(valuation(&q("1/3"), 3), Some(-1));
        assert_eq!(valuation(&q("0"), 5), None);
    }

    #[test]
    fn square_root_examples() {
        let r = sqrt_padic(&q("2"), 7, 3).unwrap().unwrap();
        let u = r.unit().to_i64().unwrap();
        assert!(u == 108 || u == 343 - 108, "{u}");
        assert_eq!(108 * 108 % 343, 2);
        let one = sqrt_padic(&q("1"), 5, 10).unwrap().unwrap();
        assert_eq!(one.unit(), &BigInt::one());
        assert!(sqrt_padic(&q("2"), 3, 10).unwrap().is_none());
        assert!(sqrt_padic(&q("3"), 2, 10).unwrap().is_none());
        assert!(sqrt_padic(&q("17"), 2, 10).unwrap().is_some());
        assert!(sqrt_padic(&q("12"), 3, 10).unwrap().is_none());
    }

    #[test]
    fn roots_square_back() {
        for (n, l) in [("2", 7u64), ("17", 2), ("-7", 2), ("50/9", 7), ("11", 5), ("44", 5), ("10", 13)] {
            let n = q(n);
            let prec = 20;
            let r = sqrt_padic(&n, l, prec).unwrap().unwrap();
            let sq = r.mul(&r);
            assert_eq!(sq, PadicApprox::from_rational(&n, l, prec), "N={n} ℓ={l}");
        }
    }

    #[test]
    fn equality_uses_common_precision() {
        let a = PadicApprox::new(3, 1, BigInt::from(1 + 27), 4).unwrap();
        let b = PadicApprox::new(3, 1, BigInt::from(1), 3).unwrap();
        assert_eq!(a, b);
        let c = PadicApprox::new(3, 1, BigInt::from(1 + 9), 4).unwrap();
        assert_ne!(c, b);
    }
}
