//! Small integer helpers shared by the arithmetic kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::Q;

pub fn pow_u64(base: u64, exp: u32) -> Result<u64> {
    base.checked_pow(exp)
        .ok_or_else(|| Error::Overflow(format!("{base}^{exp}")))
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: i128, m: i128) -> Option<i128> {
    if m == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (a.rem_euclid(m), m);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m))
}

/// Residue of an exact rational modulo `m`; the denominator must be invertible.
pub fn rational_mod(x: &Q, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let mb = BigInt::from(m);
    let num = x.numer().mod_floor(&mb).to_i128()?;
    let den = x.denom().mod_floor(&mb).to_i128()?;
    let inv = inv_mod(den, m as i128)?;
    Some(((num * inv).rem_euclid(m as i128)) as u64)
}

/// Exact power of a prime as a rational, negative exponents allowed.
pub fn prime_power_q(p: u64, e: i64) -> Q {
    let base = BigInt::from(p).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        Q::from_integer(base)
    } else {
        Q::new(BigInt::one(), base)
    }
}

pub fn big_to_u128(x: &BigInt) -> Result<u128> {
    x.abs()
        .to_u128()
        .ok_or_else(|| Error::Overflow(x.to_string()))
}

/// Square root of a nonnegative rational when it is a perfect square.
pub fn rational_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    if x.is_zero() {
        return Some(Q::zero());
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Q::new(n, d))
    } else {
        None
    }
}

/// Parse "p/q", "p" or a decimal-free integer into an exact rational.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn format_rational(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn q_to_f64(x: &Q) -> f64 {
    match (x.numer().to_f64(), x.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // fall back to log scale for huge entries
            let ln = ln_big(x.numer().abs().magnitude()) - ln_big(x.denom().magnitude());
            let v = ln.exp();
            if x.is_negative() {
                -v
            } else {
                v
            }
        }
    }
}

fn ln_big(x: &num_bigint::BigUint) -> f64 {
    let bits = x.bits();
    if bits < 1000 {
        return x.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}
