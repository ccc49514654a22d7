//! Kl^S_{k,f}(ξ, m) = Σ_{a mod kf², a² ≡ 4m (f²)} ((a²−4m)/f² / k)·e(aξ/kf²)·e_q(aξ/kf²).

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{e_frac, fraction, PhaseSum, local_kl, KlParams, LocalKlParams};
use crate::error::{Error, Result};
use crate::sarith::{factorize, kronecker, vp_u64};
use crate::util::{inv_mod, rational_mod};

const CHUNK: i128 = 2048;

/// The definitional sum. The phase of e(x)·∏e_q(x) is x − Σ⟨x⟩_q, formed exactly.
pub fn global_kl(p: &KlParams) -> Result<Complex64> {
    let modulus = p.modulus() as i128;
    let f2 = (p.f * p.f) as i128;
    let k = p.k as i128;
    let m = rational_mod(p.m.value(), p.modulus()).expect("denominator of m is prime to kf²") as i128;
    let (xn, xd) = fraction(&p.xi)?;
    let den = xd.checked_mul(modulus).ok_or_else(|| Error::Overflow("ξ denominator times kf²".into()))?;
    // for each q dividing den: q^e and the inverse of den/q^e modulo q^e
    let mut qparts = Vec::new();
    for &q in p.set().primes() {
        let e = vp_u64(xd as u64, q);
        if e == 0 {
            continue;
        }
        let qe = (q as i128).pow(e);
        let rest = den / qe;
        let inv = inv_mod(rest, qe).expect("den/q^e is a q-unit");
        qparts.push((qe, rest, inv));
    }
    let xn_mod: Vec<i128> = qparts.iter().map(|&(qe, _, _)| xn.rem_euclid(qe)).collect();
    let chunks = (modulus + CHUNK - 1) / CHUNK;
    let parts: Vec<Complex64> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = PhaseSum::default();
            for a in (c * CHUNK)..((c + 1) * CHUNK).min(modulus) {
                let d = a * a - 4 * m;
                if d.rem_euclid(f2) != 0 {
                    continue;
                }
                let sym = kronecker(d / f2, k);
                if sym == 0 {
                    continue;
                }
                // numerator of x − Σ⟨x⟩_q over den, with x = aξ/kf²
                let mut num = (a % den) * (xn % den) % den;
                for (j, &(qe, rest, inv)) in qparts.iter().enumerate() {
                    let r = (a % qe) * xn_mod[j] % qe * inv % qe;
                    num = (num - r * rest) % den;
                }
                acc.add(e_frac(num, den) * sym as f64);
            }
            acc.total()
        })
        .collect();
    let mut total = PhaseSum::default();
    parts.into_iter().for_each(|z| total.add(z));
    Ok(total.total())
}

/// One CRT factor Kl^(ℓ)_{k_(ℓ), f_(ℓ)}(((kf²)^(ℓ))^{−1}ξ, m).
#[derive(Clone, Debug, Serialize)]
pub struct LocalFactor {
    pub params: LocalKlParams,
    pub value: Complex64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrtFactorization {
    pub factors: Vec<LocalFactor>,
    pub product: Complex64,
}

pub fn crt_factorize(p: &KlParams) -> Result<CrtFactorization> {
    let modulus = p.modulus();
    let mut factors = Vec::new();
    let mut product = Complex64::new(1.0, 0.0);
    for (l, _) in factorize(modulus)? {
        let u = vp_u64(p.k, l);
        let v = vp_u64(p.f, l);
        let ml = l.pow(u + 2 * v);
        let co = (modulus / ml) as i128;
        let inv = inv_mod(co, ml as i128).expect("cofactor is prime to ℓ");
        let xi = rational_mod(p.xi.value(), ml).expect("ξ is ℓ-integral") as i128;
        let m = rational_mod(p.m.value(), ml).expect("m is ℓ-integral") as i128;
        let params = LocalKlParams::from_residues(l, u, v, xi * inv, m)?;
        let value = local_kl(&params);
        product *= value;
        factors.push(LocalFactor { params, value });
    }
    Ok(CrtFactorization { factors, product })
}
