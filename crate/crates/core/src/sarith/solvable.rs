use super::kronecker::legendre;
use super::multiplicative::factorize;
use super::SRational;
use crate::error::{Error, Result};
use crate::util::{pow_u64, rational_mod};

/// δ(a; b): whether x² ≡ a (mod b) has a solution, for b prime to S.
pub fn solvable(a: &SRational, b: u64) -> Result<bool> {
    if b == 0 {
        return Err(Error::Zero);
    }
    if let Some(prime) = a.set().common_prime(b) {
        return Err(Error::NotCoprimeToS { what: "modulus", prime });
    }
    let r = rational_mod(a.value(), b).expect("denominator invertible modulo b");
    solvable_mod(r, b)
}

/// Same indicator for an integer residue and odd modulus, by CRT and Hensel.
pub fn solvable_mod(a: u64, b: u64) -> Result<bool> {
    for (p, e) in factorize(b)? {
        let pe = pow_u64(p, e)?;
        let mut r = a % pe;
        if r == 0 {
            continue;
        }
        let mut v = 0;
        while r.is_multiple_of(p) {
            r /= p;
            v += 1;
        }
        if v % 2 == 1 {
            return Ok(false);
        }
        let ok = if p == 2 {
            let rest = e - v;
            match rest {
                1 => true,
                2 => r % 4 == 1,
                _ => r % 8 == 1,
            }
        } else {
            legendre(r as i128, p) == 1
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}
