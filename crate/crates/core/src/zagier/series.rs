//! L^S(s, δ) as a convergent Dirichlet series, Re s > 1.

use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use super::{twists, LSeriesParams};
use crate::error::{Error, Result};
use crate::sarith::RamificationSet;
use crate::special::{hurwitz_zeta, Estimate};

/// Periods above this fall back to the crude tail bound Σ_{k>K} k^{−σ}.
const MAX_HURWITZ_PERIOD: u64 = 1 << 18;
const CHUNK: u64 = 4096;

#[derive(Clone, Debug, Serialize)]
pub struct SeriesReport {
    pub value: Complex64,
    pub error: f64,
    /// Terms summed directly per twist.
    pub direct_terms: u64,
    /// Whether the tail was summed exactly through Hurwitz zeta values.
    pub hurwitz_tail: bool,
}

fn cpow(k: f64, s: Complex64) -> Complex64 {
    (-s * k.ln()).exp()
}

/// Σ_{k ≤ K, (k,S)=1} c(k)k^{−s}, in fixed chunk order.
fn direct_sum(s: Complex64, upto: u64, set: &RamificationSet, c: impl Fn(u64) -> i8 + Sync) -> Complex64 {
    let chunks = upto.div_ceil(CHUNK);
    let parts: Vec<Complex64> = (0..chunks)
        .into_par_iter()
        .map(|j| {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in (j * CHUNK + 1)..=((j + 1) * CHUNK).min(upto) {
                if !set.is_coprime(k) {
                    continue;
                }
                let x = c(k);
                if x != 0 {
                    acc += cpow(k as f64, s) * x as f64;
                }
            }
            acc
        })
        .collect();
    parts.into_iter().sum()
}

/// L^S(s, δ) = Σ_{f²|δ} f^{1−2s} Σ_k (δ/f² / k) k^{−s}, with error estimate.
pub fn lfun_series(s: Complex64, p: &LSeriesParams) -> Result<Estimate<Complex64>> {
    let r = lfun_series_report(s, p)?;
    Ok(Estimate {
        value: r.value,
        error: r.error,
    })
}

pub fn lfun_series_report(s: Complex64, p: &LSeriesParams) -> Result<SeriesReport> {
    if s.re <= 1.0 {
        return Err(Error::Domain(format!(
            "the Dirichlet series needs Re s > 1, got {s}; use the approximate functional equation"
        )));
    }
    let d = p.discriminant()?;
    let set = d.set().clone();
    let qprod = set.product();
    let mut value = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    let mut direct_terms = 0;
    let mut hurwitz_tail = true;
    for t in twists(&d)? {
        let period = (4 * t.key.unsigned_abs() as u64).lcm(&qprod);
        let c = |k: u64| if set.is_coprime(k) { t.chi(k) } else { 0 };
        let weight = cpow(t.f as f64, 2.0 * s - 1.0);
        let (sum, err, upto) = if period <= MAX_HURWITZ_PERIOD {
            let upto = p.cutoff.div_ceil(period).max(1) * period;
            let direct = direct_sum(s, upto, &set, c);
            // Σ_{k>K} c(k)k^{−s} = P^{−s} Σ_{r=1}^{P} c(r) ζ(s, (K+r)/P), with P | K
            let pf = period as f64;
            let tail: Vec<Estimate<Complex64>> = (1..=period)
                .into_par_iter()
                .filter_map(|r| {
                    let x = c(r);
                    (x != 0).then(|| {
                        hurwitz_zeta(s, (upto + r) as f64 / pf).map(|h| Estimate {
                            value: h.value * x as f64,
                            error: h.error,
                        })
                    })
                })
                .collect::<Result<_>>()?;
            let scale = cpow(pf, s);
            let tv: Complex64 = tail.iter().map(|e| e.value).sum::<Complex64>() * scale;
            let te: f64 = tail.iter().map(|e| e.error).sum::<f64>() * scale.norm();
            (direct + tv, te + 1e-15 * direct.norm(), upto)
        } else {
            hurwitz_tail = false;
            let upto = p.cutoff;
            let direct = direct_sum(s, upto, &set, c);
            let sigma = s.re;
            (direct, (upto as f64).powf(1.0 - sigma) / (sigma - 1.0), upto)
        };
        value += sum * weight;
        error += err * weight.norm();
        direct_terms = direct_terms.max(upto);
    }
    Ok(SeriesReport {
        value,
        error,
        direct_terms,
        hurwitz_tail,
    })
}
