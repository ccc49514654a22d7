//! Kl^(ℓ)_{ℓ^u,ℓ^v}(ξ, m) = Σ_{a mod ℓ^{u+2v}, a² ≡ 4m (ℓ^{2v})} ((a²−4m)/ℓ^{2v} / ℓ^u)·e(aξ/ℓ^{u+2v}).

use num_complex::Complex64;

use super::{e_frac, LocalKlParams, PhaseSum};
use crate::sarith::kronecker;

/// Roots of a² ≡ 4m modulo ℓ^{2v}.
fn roots(p: &LocalKlParams) -> Vec<u64> {
    let n = p.prime.pow(2 * p.v);
    let target = (4 * p.m as u128 % n as u128) as u64;
    (0..n).filter(|&a| (a as u128 * a as u128 % n as u128) as u64 == target).collect()
}

pub fn local_kl(p: &LocalKlParams) -> Complex64 {
    let l = p.prime as i128;
    let big = p.modulus() as i128;
    let step = l.pow(2 * p.v);
    let lu = l.pow(p.u);
    let m4 = 4 * p.m as i128;
    let mut acc = PhaseSum::default();
    for r in roots(p) {
        for j in 0..lu {
            let a = r as i128 + step * j;
            let sym = if p.u == 0 {
                1
            } else {
                let t = (a * a - m4).div_euclid(step);
                // (t / ℓ^u) = (t / ℓ)^u
                let s = kronecker(t, l);
                if p.u.is_multiple_of(2) { s * s } else { s }
            };
            if sym != 0 {
                acc.add(e_frac(a * p.xi as i128, big) * sym as f64);
            }
        }
    }
    acc.total()
}
