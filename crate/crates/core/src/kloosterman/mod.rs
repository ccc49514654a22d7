//! Classical and generalized Kloosterman sums, their CRT factorization and bound predicates.

mod bounds;
mod classical;
mod global;
mod local;

pub use bounds::{bound_global, bound_local, GlobalBoundReport, LocalBoundCase, LocalBoundReport};
pub use classical::{classical_kloosterman, estermann_bound, weil_bound};
pub use global::{crt_factorize, global_kl, CrtFactorization, LocalFactor};
pub use local::local_kl;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sarith::{is_prime, vp_u64, RamificationSet, SRational};
use crate::util::{pow_u64, rational_mod};

/// Moduli kf² above this are rejected to keep phase numerators inside i128.
pub const MAX_MODULUS: u64 = 1 << 40;

fn e_frac(num: i128, den: i128) -> num_complex::Complex64 {
    let mut r = num.rem_euclid(den);
    if 2 * r > den {
        r -= den;
    }
    let (sin, cos) = (2.0 * std::f64::consts::PI * (r as f64 / den as f64)).sin_cos();
    num_complex::Complex64::new(cos, sin)
}

/// Neumaier-compensated sum of complex terms.
#[derive(Clone, Copy, Debug, Default)]
struct PhaseSum {
    sum: [f64; 2],
    carry: [f64; 2],
}

impl PhaseSum {
    fn add(&mut self, z: num_complex::Complex64) {
        for (i, x) in [z.re, z.im].into_iter().enumerate() {
            let t = self.sum[i] + x;
            self.carry[i] += if self.sum[i].abs() >= x.abs() {
                (self.sum[i] - t) + x
            } else {
                (x - t) + self.sum[i]
            };
            self.sum[i] = t;
        }
    }

    fn total(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.sum[0] + self.carry[0], self.sum[1] + self.carry[1])
    }
}

/// (k, f, ξ, m) for Kl^S_{k,f}(ξ, m), with k, f prime to S and ξ, m in Z^S.
#[derive(Clone, Debug)]
pub struct KlParams {
    pub k: u64,
    pub f: u64,
    pub xi: SRational,
    pub m: SRational,
}

impl KlParams {
    pub fn new(k: u64, f: u64, xi: SRational, m: SRational) -> Result<Self> {
        if xi.set() != m.set() {
            return Err(Error::Domain("ξ and m must use the same S".into()));
        }
        let set = xi.set();
        for (what, x) in [("k", k), ("f", f)] {
            if x == 0 {
                return Err(Error::Domain(format!("{what} must be positive")));
            }
            if let Some(prime) = set.common_prime(x) {
                return Err(Error::NotCoprimeToS { what, prime });
            }
        }
        f.checked_mul(f)
            .and_then(|f2| f2.checked_mul(k))
            .filter(|&n| n <= MAX_MODULUS)
            .ok_or_else(|| Error::Overflow(format!("kf² for k = {k}, f = {f}")))?;
        Ok(Self { k, f, xi, m })
    }

    pub fn set(&self) -> &RamificationSet {
        self.xi.set()
    }

    /// kf².
    pub fn modulus(&self) -> u64 {
        self.k * self.f * self.f
    }
}

/// Local data (ℓ, u, v, ξ′, m′) with ξ′, m′ reduced modulo ℓ^{u+2v}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LocalKlParams {
    pub prime: u64,
    pub u: u32,
    pub v: u32,
    pub xi: u64,
    pub m: u64,
}

impl LocalKlParams {
    /// Reduces ξ, m ∈ Z_(ℓ) modulo ℓ^{u+2v}; ℓ must be an odd prime outside S.
    pub fn new(prime: u64, u: u32, v: u32, xi: &SRational, m: &SRational) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::NotPrime(prime));
        }
        if xi.set().contains(prime) {
            return Err(Error::Domain(format!("ℓ = {prime} lies in S")));
        }
        let modulus = pow_u64(prime, u + 2 * v)?;
        if modulus > MAX_MODULUS {
            return Err(Error::Overflow(format!("{prime}^{}", u + 2 * v)));
        }
        let red = |x: &SRational| {
            rational_mod(x.value(), modulus).ok_or_else(|| Error::Domain(format!("{x} is not {prime}-integral")))
        };
        Ok(Self {
            prime,
            u,
            v,
            xi: red(xi)?,
            m: red(m)?,
        })
    }

    /// Directly from integer residues.
    pub fn from_residues(prime: u64, u: u32, v: u32, xi: i128, m: i128) -> Result<Self> {
        if !is_prime(prime) || prime == 2 {
            return Err(Error::UnsupportedPrime(prime));
        }
        let modulus = pow_u64(prime, u + 2 * v)?;
        if modulus > MAX_MODULUS {
            return Err(Error::Overflow(format!("{prime}^{}", u + 2 * v)));
        }
        let md = modulus as i128;
        Ok(Self {
            prime,
            u,
            v,
            xi: xi.rem_euclid(md) as u64,
            m: m.rem_euclid(md) as u64,
        })
    }

    /// ℓ^{u+2v}.
    pub fn modulus(&self) -> u64 {
        self.prime.pow(self.u + 2 * self.v)
    }

    /// v_ℓ of the reduced residue, capped at u + 2v.
    fn capped_valuation(&self, x: u64) -> u32 {
        let cap = self.u + 2 * self.v;
        if x == 0 {
            cap
        } else {
            vp_u64(x, self.prime).min(cap)
        }
    }
}

/// An S-rational as an i128 fraction.
fn fraction(x: &SRational) -> Result<(i128, i128)> {
    let v = x.value();
    let n = v.numer().to_i128();
    let d = v.denom().to_i128();
    match (n, d) {
        (Some(n), Some(d)) => Ok((n, d)),
        _ => Err(Error::Overflow(format!("{x}"))),
    }
}
