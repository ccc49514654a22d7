//! Classical multiplicative functions on positive integers.

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(n: u64) -> Result<Vec<(u64, u32)>> {
    if n == 0 {
        return Err(Error::Zero);
    }
    let mut out = Vec::new();
    let mut n = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    Ok(out)
}

pub fn factorize_u128(n: u128) -> Result<Vec<(u128, u32)>> {
    if n == 0 {
        return Err(Error::Zero);
    }
    let mut out = Vec::new();
    let mut n = n;
    let mut p = 2u128;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    Ok(out)
}

/// All positive divisors, ascending.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    let mut divs = vec![1u64];
    for (p, e) in factorize(n)? {
        let len = divs.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    Ok(divs)
}

/// Möbius function.
pub fn mu(n: u64) -> Result<i8> {
    let f = factorize(n)?;
    if f.iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if f.len() % 2 == 0 { 1 } else { -1 })
}

/// Von Mangoldt function: log p when n is a power of p, else 0.
pub fn lambda_vm(n: u64) -> Result<f64> {
    Ok(match prime_power_base(n)? {
        Some(p) => (p as f64).ln(),
        None => 0.0,
    })
}

/// The prime p when n = p^m with m ≥ 1.
pub fn prime_power_base(n: u64) -> Result<Option<u64>> {
    let f = factorize(n)?;
    Ok(if f.len() == 1 { Some(f[0].0) } else { None })
}

pub fn num_divisors(n: u64) -> Result<u64> {
    Ok(factorize(n)?.iter().map(|&(_, e)| e as u64 + 1).product())
}

pub fn num_prime_divisors(n: u64) -> Result<u32> {
    Ok(factorize(n)?.len() as u32)
}

pub fn radical(n: u64) -> Result<u64> {
    Ok(factorize(n)?.iter().map(|&(p, _)| p).product())
}

pub fn euler_phi(n: u64) -> Result<u64> {
    Ok(factorize(n)?
        .iter()
        .map(|&(p, e)| (p - 1) * p.pow(e - 1))
        .product())
}

/// Exponent of the prime p in n (n > 0).
pub fn vp_u64(mut n: u64, p: u64) -> u32 {
    let mut e = 0;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(mu(12).unwrap(), 0);
        assert_eq!(mu(30).unwrap(), -1);
        assert_eq!(mu(1).unwrap(), 1);
        assert!((lambda_vm(8).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert_eq!(lambda_vm(12).unwrap(), 0.0);
        assert_eq!(radical(12).unwrap(), 6);
        assert_eq!(num_divisors(12).unwrap(), 6);
        assert_eq!(num_prime_divisors(12).unwrap(), 2);
        assert_eq!(euler_phi(12).unwrap(), 4);
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn zero_rejected() {
        assert_eq!(mu(0), Err(Error::Zero));
        assert!(radical(0).is_err());
    }

    #[test]
    fn divisor_count_matches_enumeration() {
        for n in 1..500u64 {
            let brute = (1..=n).filter(|d| n % d == 0).count() as u64;
            assert_eq!(num_divisors(n).unwrap(), brute);
            assert_eq!(divisors(n).unwrap().len() as u64, brute);
        }
    }
}
