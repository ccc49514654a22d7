//! Bound predicates for local and global generalized Kloosterman sums.

use num_complex::Complex64;
use num_integer::{Integer, Roots};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{global_kl, local_kl, KlParams, LocalKlParams};
use crate::error::{Error, Result};
use crate::sarith::{radical, solvable, solvable_mod, SRational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LocalBoundCase {
    /// v_ℓ(ξ) ≥ u + ½min{2v, v_ℓ(m)}.
    Full,
    /// v_ℓ(ξ) = u − 1 + ½min{2v, v_ℓ(m)}.
    Reduced,
    /// Any other valuation: the sum vanishes.
    Vanishing,
    /// a² ≡ 4m (ℓ^{2v}) has no solution.
    NoSolution,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalBoundReport {
    pub params: LocalKlParams,
    pub case: LocalBoundCase,
    /// δ(4m; ℓ^{2v})·ℓ^{u+min{2v,v(m)}/2}·(1 or ℓ^{−1/2}); zero in the vanishing cases.
    pub bound: f64,
    pub value: Complex64,
    /// |Kl|/bound, the implied constant seen here.
    pub constant: Option<f64>,
    /// False only if a predicted zero is not one.
    pub consistent: bool,
}

const ZERO_TOL: f64 = 1e-12;

pub fn bound_local(p: &LocalKlParams) -> Result<LocalBoundReport> {
    let l = p.prime as f64;
    let mv = p.capped_valuation(p.m).min(2 * p.v);
    let half = mv as f64 / 2.0;
    let xv = p.capped_valuation(p.xi) as f64;
    let base = l.powf(p.u as f64 + half);
    let sq = p.prime.pow(2 * p.v);
    let solvable = solvable_mod((4 * p.m as u128 % sq as u128) as u64, sq)?;
    let (case, bound) = if !solvable {
        (LocalBoundCase::NoSolution, 0.0)
    } else if xv >= p.u as f64 + half {
        (LocalBoundCase::Full, base)
    } else if xv == p.u as f64 - 1.0 + half {
        (LocalBoundCase::Reduced, base / l.sqrt())
    } else {
        (LocalBoundCase::Vanishing, 0.0)
    };
    let value = local_kl(p);
    let abs = value.norm();
    Ok(LocalBoundReport {
        params: *p,
        case,
        bound,
        value,
        constant: (bound > 0.0).then(|| abs / bound),
        consistent: bound > 0.0 || abs < ZERO_TOL,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GlobalBoundReport {
    pub epsilon: f64,
    /// δ(4m; f²).
    pub solvable: bool,
    /// gcd(m^(q), f²) is a perfect square.
    pub gcd_is_square: bool,
    /// k·√gcd(m^(q), f²)/rad k divides ξ^(q).
    pub gate: bool,
    pub bound: f64,
    pub value: Complex64,
    pub constant: Option<f64>,
    pub consistent: bool,
}

/// |x^(q)| as an integer, zero for x = 0.
fn prime_to_s_part(x: &SRational) -> Result<u64> {
    if x.is_zero() {
        return Ok(0);
    }
    let (_, rest) = x.split_q()?;
    rest.numer()
        .abs()
        .to_u64()
        .ok_or_else(|| Error::Overflow(format!("{x}^(q)")))
}

pub fn bound_global(p: &KlParams, epsilon: f64) -> Result<GlobalBoundReport> {
    if !(epsilon > 0.0) {
        return Err(Error::Domain(format!("ε = {epsilon} must be positive")));
    }
    let f2 = p.f * p.f;
    let mq = prime_to_s_part(&p.m)?;
    let xq = prime_to_s_part(&p.xi)?;
    let g = mq.gcd(&f2);
    let d = g.sqrt();
    let gcd_is_square = d * d == g;
    let four_m = p.m.map(|x| x * crate::Q::from_integer(4.into()))?;
    let solvable = solvable(&four_m, f2)?;
    let step = p.k * d / radical(p.k)?;
    let gate = gcd_is_square && (xq.is_zero() || xq % step == 0);
    let bound = if solvable && gate {
        let inner = if xq.is_zero() { p.k } else { (xq / d).gcd(&p.k) };
        (p.modulus() as f64).powf(epsilon) * ((p.k * g) as f64).sqrt() * (inner as f64).sqrt()
    } else {
        0.0
    };
    let value = global_kl(p)?;
    let abs = value.norm();
    let slack = 1e-12 * (p.modulus() as f64).sqrt().max(1.0);
    Ok(GlobalBoundReport {
        epsilon,
        solvable,
        gcd_is_square,
        gate,
        bound,
        value,
        constant: (bound > 0.0).then(|| abs / bound),
        consistent: bound > 0.0 || abs < slack,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sarith::RamificationSet;
    use crate::Q;

    #[test]
    fn local_vanishing_grid() {
        let mut checked = 0;
        for l in [3u64, 5, 7] {
            for u in 0..=2 {
                for v in 0..=1 {
                    let n = l.pow(u + 2 * v) as i128;
                    let step = (n / 40).max(1);
                    let mut xi = 0;
                    while xi < n {
                        for m in [0, 1, 2, l as i128, (l * l) as i128, 3 * l as i128 + 1] {
                            let p = LocalKlParams::from_residues(l, u, v, xi, m).unwrap();
                            let r = bound_local(&p).unwrap();
                            assert!(r.consistent, "{r:?}");
                            checked += 1;
                        }
                        xi += step;
                    }
                }
            }
        }
        assert!(checked > 500);
    }

    #[test]
    fn seven_unit_case() {
        let p = LocalKlParams::from_residues(7, 1, 0, 3, 2).unwrap();
        let r = bound_local(&p).unwrap();
        assert_eq!(r.case, LocalBoundCase::Reduced);
        assert!((r.bound - 7f64.sqrt()).abs() < 1e-12);
        // a quadratic character sum of length ℓ: the implied constant is at most 2
        for xi in 1..7 {
            for m in 1..7 {
                let r = bound_local(&LocalKlParams::from_residues(7, 1, 0, xi, m).unwrap()).unwrap();
                assert!(r.value.norm() <= 2.0 * r.bound + 1e-12);
            }
        }
    }

    #[test]
    fn global_gate_predicts_zero() {
        let set = RamificationSet::new(&[2, 3]).unwrap();
        let mut zeros = 0;
        for k in (1..=60u64).filter(|&k| set.is_coprime(k)) {
            for f in [1u64, 5, 7] {
                if k * f * f > 3000 {
                    continue;
                }
                for xi in [0i64, 1, 5, 25, 35, -49, 175] {
                    for m in [1i64, 5, 25, -7, 3] {
                        let p = KlParams::new(
                            k,
                            f,
                            SRational::new(Q::from_integer(xi.into()), &set).unwrap(),
                            SRational::new(Q::from_integer(m.into()), &set).unwrap(),
                        )
                        .unwrap();
                        let r = bound_global(&p, 0.1).unwrap();
                        assert!(r.consistent, "k={k} f={f} ξ={xi} m={m}: {r:?}");
                        if r.bound == 0.0 {
                            zeros += 1;
                        }
                    }
                }
            }
        }
        assert!(zeros > 100);
    }

    #[test]
    fn trivial_modulus_bound() {
        let set = RamificationSet::two();
        let one = SRational::from_int(1, &set);
        let p = KlParams::new(1, 1, one.clone(), one).unwrap();
        let r = bound_global(&p, 0.1).unwrap();
        assert!(r.bound >= 1.0 && (r.value - 1.0).norm() < 1e-15);
    }
}
