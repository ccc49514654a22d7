//! The height ⟦a⋆ξ⟧ = (1+|aξ|)∏(1+|ξ|_{q_i}) and truncated sums over ξ ∈ Z^S.

use num_traits::{One, Signed};
use serde::Serialize;

use super::{RamificationSet, SRational};
use crate::error::{Error, Result};
use crate::padic::valuation;
use crate::util::prime_power_q;
use crate::Q;

pub fn height(a: f64, xi: &SRational) -> f64 {
    let mut h = 1.0 + (a * xi.to_f64()).abs();
    for &q in xi.set().primes() {
        h *= 1.0 + qnorm_f64(xi.value(), q);
    }
    h
}

/// Exact height for rational a.
pub fn height_exact(a: &Q, xi: &SRational) -> Q {
    let mut h = Q::one() + (a * xi.value()).abs();
    for &q in xi.set().primes() {
        let norm = match valuation(xi.value(), q) {
            Some(v) => prime_power_q(q, -v),
            None => Q::from_integer(0.into()),
        };
        h *= Q::one() + norm;
    }
    h
}

fn qnorm_f64(x: &Q, q: u64) -> f64 {
    match valuation(x, q) {
        Some(v) => (q as f64).powi(-v as i32),
        None => 0.0,
    }
}

/// Enumeration box for ξ = q^u·t: u_i ∈ [−U, 0], |t| ≤ T, q_i ∤ t when u_i < 0.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SumCutoffs {
    pub max_neg_exp: u32,
    pub max_t: u64,
}

impl Default for SumCutoffs {
    fn default() -> Self {
        Self {
            max_neg_exp: 12,
            max_t: 100_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum LargeSumMode {
    /// All ξ ≠ 0.
    Full,
    /// Only ξ with ⟦a⋆ξ⟧ ≥ b.
    Above(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HeightSumReport {
    pub value: f64,
    pub tail_bound: f64,
    pub comparator: f64,
    pub ratio: f64,
    pub terms: u64,
}

/// All exponent vectors u ∈ [−U, 0]^r.
fn exponent_vectors(r: usize, max_neg: u32) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=max_neg as i64).map(move |w| {
                    let mut v = v.clone();
                    v.push(-w);
                    v
                })
            })
            .collect();
    }
    out
}

fn admissible_t(t: u64, set: &RamificationSet, u: &[i64]) -> bool {
    set.primes()
        .iter()
        .zip(u)
        .all(|(&q, &ui)| ui == 0 || !t.is_multiple_of(q))
}

/// ∏(1 + |q^u·t|_{q_i}) for an admissible t.
fn local_factor(t: u64, set: &RamificationSet, u: &[i64]) -> f64 {
    set.primes()
        .iter()
        .zip(u)
        .map(|(&q, &ui)| 1.0 + (q as f64).powi(-(ui as i32) - super::vp_u64(t, q) as i32))
        .product()
}

/// Lower bound of the local factor over all admissible t.
fn local_floor(set: &RamificationSet, u: &[i64]) -> f64 {
    set.primes()
        .iter()
        .zip(u)
        .map(|(&q, &ui)| if ui < 0 { 1.0 + (q as f64).powi(-ui as i32) } else { 1.0 })
        .product()
}

/// Σ_{ξ≠0} ⟦a⋆ξ⟧^{−M}, optionally restricted to ⟦a⋆ξ⟧ ≥ b, with its comparator
/// |a|^{−M+ε} (full) or |a|^{−1}b^{−M+1+ε} (restricted).
pub fn height_sum_large(
    a: f64,
    m: f64,
    mode: LargeSumMode,
    set: &RamificationSet,
    eps: f64,
    cutoffs: SumCutoffs,
) -> Result<HeightSumReport> {
    if m <= 1.0 {
        return Err(Error::Domain(format!("exponent M = {m} must exceed 1")));
    }
    if a <= 0.0 {
        return Err(Error::Domain("a must be positive".into()));
    }
    let threshold = match mode {
        LargeSumMode::Full => None,
        LargeSumMode::Above(b) => Some(b),
    };
    let primes = set.primes();
    let mut value = 0.0;
    let mut tail = 0.0;
    let mut terms = 0u64;
    for u in exponent_vectors(primes.len(), cutoffs.max_neg_exp) {
        let qu: f64 = primes.iter().zip(&u).map(|(&q, &ui)| (q as f64).powi(ui as i32)).product();
        let local = local_floor(set, &u);
        let c = a * qu;
        let mut part = 0.0;
        for t in 1..=cutoffs.max_t {
            if !admissible_t(t, set, &u) {
                continue;
            }
            let h = (1.0 + c * t as f64) * local_factor(t, set, &u);
            if threshold.is_some_and(|b| h < b) {
                continue;
            }
            part += 2.0 * h.powf(-m);
            terms += 2;
        }
        value += part;
        // Σ_{t>T} 2(ct)^{-M}·local^{-M} ≤ 2c^{-M}T^{1-M}/(M-1)·local^{-M}
        tail += 2.0 * c.powf(-m) * (cutoffs.max_t as f64).powf(1.0 - m) / (m - 1.0) * local.powf(-m);
    }
    // exponent vectors outside the box: Σ_t (1+c|t|)^{-M} ≤ 2/(c(M-1))
    let geo = |q: f64, from: f64| q.powf(-from * (m - 1.0)) / (1.0 - q.powf(-(m - 1.0)));
    for (i, &qi) in primes.iter().enumerate() {
        let mut term = 2.0 / (a * (m - 1.0)) * geo(qi as f64, cutoffs.max_neg_exp as f64 + 1.0);
        for (j, &qj) in primes.iter().enumerate() {
            if j != i {
                term *= geo(qj as f64, 0.0);
            }
        }
        tail += term;
    }
    let comparator = match mode {
        LargeSumMode::Full => a.powf(-m + eps),
        LargeSumMode::Above(b) => b.powf(-m + 1.0 + eps) / a,
    };
    Ok(HeightSumReport {
        value,
        tail_bound: tail,
        comparator,
        ratio: value / comparator,
        terms,
    })
}

/// Σ_{ξ ∈ Z^S, ⟦a⋆ξ⟧ ≤ b} ⟦a⋆ξ⟧^{−α} (ξ = 0 included), compared against b^{1−α}a^{−1}log^r b.
pub fn height_sum_small(
    a: f64,
    b: f64,
    alpha: f64,
    set: &RamificationSet,
    cutoffs: SumCutoffs,
) -> Result<HeightSumReport> {
    if alpha >= 1.0 {
        return Err(Error::Domain(format!("α = {alpha} must be below 1")));
    }
    if a <= 0.0 {
        return Err(Error::Domain("a must be positive".into()));
    }
    let primes = set.primes();
    let comparator = if b >= 2.0 {
        b.powf(1.0 - alpha) / a * b.ln().powi(primes.len() as i32)
    } else {
        f64::NAN
    };
    let mut value = 0.0;
    let mut terms = 0u64;
    if b >= 1.0 {
        // ξ = 0 has height 1
        value += 1.0;
        terms += 1;
    }
    for u in exponent_vectors(primes.len(), cutoffs.max_neg_exp) {
        let qu: f64 = primes.iter().zip(&u).map(|(&q, &ui)| (q as f64).powi(ui as i32)).product();
        let local = local_floor(set, &u);
        if local > b {
            continue;
        }
        let c = a * qu;
        let tmax = ((b / local - 1.0) / c).floor();
        if tmax > cutoffs.max_t as f64 {
            return Err(Error::Domain(format!(
                "cutoff T = {} too small for b = {b}",
                cutoffs.max_t
            )));
        }
        for t in 1..=tmax as u64 {
            if !admissible_t(t, set, &u) {
                continue;
            }
            let h = (1.0 + c * t as f64) * local_factor(t, set, &u);
            if h <= b {
                value += 2.0 * h.powf(-alpha);
                terms += 2;
            }
        }
    }
    // the box covers every ξ once q^{U+1} exceeds b
    let uncovered = primes
        .iter()
        .any(|&q| 1.0 + (q as f64).powi(cutoffs.max_neg_exp as i32 + 1) <= b);
    if uncovered {
        return Err(Error::Domain(format!(
            "cutoff U = {} too small for b = {b}",
            cutoffs.max_neg_exp
        )));
    }
    Ok(HeightSumReport {
        value,
        tail_bound: 0.0,
        comparator,
        ratio: value / comparator,
        terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::parse_rational;

    #[test]
    fn examples() {
        let s = RamificationSet::two();
        assert_eq!(height(1.0, &SRational::from_int(1, &s)), 4.0);
        let half = SRational::parse("1/2", &s).unwrap();
        assert_eq!(height(2.0, &half), 6.0);
        assert_eq!(
            height_exact(&parse_rational("2").unwrap(), &half),
            parse_rational("6").unwrap()
        );
    }

    #[test]
    fn scaling_by_s_units_prime_to_s() {
        let s = RamificationSet::new(&[2, 3]).unwrap();
        for (a, x) in [("5", "7/12"), ("35", "-1/8"), ("1", "9"), ("11", "0")] {
            let a = parse_rational(a).unwrap();
            let xi = SRational::parse(x, &s).unwrap();
            let axi = SRational::new(&a * xi.value(), &s).unwrap();
            assert_eq!(height_exact(&a, &xi), height_exact(&Q::one(), &axi));
        }
    }

    #[test]
    fn empty_small_range() {
        let s = RamificationSet::two();
        let r = height_sum_small(1.0, 0.5, 0.5, &s, SumCutoffs::default()).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn small_sum_matches_brute_enumeration() {
        // enumerate ξ = t/2^j directly with exact heights
        let s = RamificationSet::two();
        let (a, b, alpha) = (2.0, 20.0, 0.5);
        let fast = height_sum_small(a, b, alpha, &s, SumCutoffs::default()).unwrap().value;
        let mut brute = 0.0;
        for j in 0..8i64 {
            for t in -200i64..=200 {
                if j > 0 && t % 2 == 0 {
                    continue;
                }
                if j > 0 && t == 0 {
                    continue;
                }
                let xi = SRational::new(Q::new(t.into(), (1i64 << j).into()), &s).unwrap();
                let h = height(a, &xi);
                if h <= b {
                    brute += h.powf(-alpha);
                }
            }
        }
        assert!((fast - brute).abs() < 1e-12, "{fast} vs {brute}");
    }

    #[test]
    fn large_sum_tail_is_small() {
        let s = RamificationSet::two();
        let cut = SumCutoffs { max_neg_exp: 12, max_t: 20_000 };
        let r = height_sum_large(1.0, 3.0, LargeSumMode::Full, &s, 0.1, cut).unwrap();
        assert!(r.value > 0.0 && r.tail_bound < 1e-6 * r.value);
        let big = height_sum_large(1.0, 3.0, LargeSumMode::Above(16.0), &s, 0.1, cut).unwrap();
        assert!(big.value < r.value);
    }
}

#[cfg(test)]
mod properties {
    use proptest::prelude::*;

    use super::*;
    use crate::util::strategies::pow;

    proptest! {
        #[test]
        fn absorbs_prime_to_s_integers(t in -10_000i64..10_000, e in -6i32..6, a in 1i64..500) {
            prop_assume!(a % 2 != 0);
            let s = RamificationSet::two();
            let xi = SRational::new(Q::from_integer(t.into()) * pow(2, e), &s).unwrap();
            let a = Q::from_integer(a.into());
            let axi = SRational::new(&a * xi.value(), &s).unwrap();
            prop_assert_eq!(height_exact(&a, &xi), height_exact(&Q::one(), &axi));
        }
    }
}
