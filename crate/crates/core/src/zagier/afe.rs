//! L^S(s, δ) through the approximate functional equation, valid for every s.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{lfun_square, norm_f64, twists, LSeriesParams, Twist};
use crate::error::{Error, Result};
use crate::sarith::RamificationSet;
use crate::special::{f_of, normalizer, ContourSpec, Estimate, FTildeGrid, VKernel};

const BLOCK: usize = 256;
/// Shift of the contour used for the V-tail majorant.
const MAJORANT_SHIFT: f64 = 8.0;

#[derive(Clone, Debug, Serialize)]
pub struct AfeReport {
    pub value: Complex64,
    pub error: f64,
    pub a: f64,
    /// Largest k used in the F-weighted and V-weighted sums.
    pub k_max_f: u64,
    pub k_max_v: u64,
    pub tail_bound: f64,
}

fn cpow(x: f64, s: Complex64) -> Complex64 {
    (s * x.ln()).exp()
}

struct Side<'a> {
    twist: Twist,
    set: &'a RamificationSet,
    /// Argument scale: the weight is evaluated at k·c.
    c: f64,
    /// Overall factor, k-power exponent.
    coeff: Complex64,
    k_exp: Complex64,
}

impl Side<'_> {
    /// Sums coefficient·k^{k_exp}·χ(k)·w(kc) over k coprime to S until `tail(K)` is small.
    fn sum(
        &self,
        weight: impl Fn(f64) -> Result<Estimate<Complex64>> + Sync,
        tail: impl Fn(u64) -> Option<f64>,
        tol: f64,
        cutoff: u64,
    ) -> Result<(Estimate<Complex64>, u64, f64)> {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut err = 0.0;
        let mut next = 1u64;
        loop {
            let ks: Vec<u64> = (next..)
                .filter(|&k| self.set.is_coprime(k))
                .take(BLOCK)
                .collect();
            let last = *ks.last().expect("infinitely many k prime to S");
            next = last + 1;
            let terms: Vec<Estimate<Complex64>> = ks
                .par_iter()
                .map(|&k| {
                    let chi = self.twist.chi(k);
                    if chi == 0 {
                        return Ok(Estimate::exact(Complex64::new(0.0, 0.0)));
                    }
                    let w = weight(k as f64 * self.c)?;
                    let m = self.coeff * cpow(k as f64, self.k_exp) * chi as f64;
                    Ok(Estimate {
                        value: m * w.value,
                        error: m.norm() * w.error,
                    })
                })
                .collect::<Result<_>>()?;
            for t in terms {
                acc += t.value;
                err += t.error;
            }
            if let Some(t) = tail(last) {
                if t <= tol * acc.norm().max(1.0) {
                    return Ok((Estimate { value: acc, error: err + t }, last, t));
                }
            }
            if last >= cutoff {
                return Err(Error::Uncertified {
                    achieved: tail(last).unwrap_or(f64::INFINITY),
                    wanted: tol,
                });
            }
        }
    }
}

/// L^S(s, δ) by the approximate functional equation with splitting parameter A.
/// Square δ is evaluated in closed form instead.
pub fn lfun_afe(s: Complex64, p: &LSeriesParams, a: f64) -> Result<AfeReport> {
    lfun_afe_with(s, p, a, ContourSpec::default_for(s))
}

pub fn lfun_afe_with(s: Complex64, p: &LSeriesParams, a: f64, contour: ContourSpec) -> Result<AfeReport> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::Domain(format!("splitting parameter A = {a} must be positive")));
    }
    let d = p.discriminant()?;
    if d.is_square() {
        let v = lfun_square(s, &p.delta)?;
        return Ok(AfeReport {
            value: v.value,
            error: v.error,
            a,
            k_max_f: 0,
            k_max_v: 0,
            tail_bound: 0.0,
        });
    }
    let set = d.set().clone();
    let norm = norm_f64(&d);
    let grid = FTildeGrid::new(contour)?;
    let kernel = VKernel::new(d.iota, &d.epsilon, &set, s, &grid)?;
    let shifted = ContourSpec {
        sigma: contour.sigma + MAJORANT_SHIFT,
        ..contour
    };
    let bound_kernel = VKernel::new(d.iota, &d.epsilon, &set, s, &FTildeGrid::new(shifted)?)?;
    let sigma_b = shifted.sigma;
    let f_norm = normalizer()?.value;
    // the tail is split between the two sums of every twist
    let tw = twists(&d)?;
    let tol = p.tolerance / (4.0 * tw.len() as f64);

    let mut value = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    let mut tail_bound = 0.0;
    let (mut k_max_f, mut k_max_v) = (0, 0);
    for t in tw {
        let f = t.f as f64;
        // Σ_k f^{1−2s} k^{−s} χ(k) F(kf²/A)
        let side_f = Side {
            twist: t,
            set: &set,
            c: f * f / a,
            coeff: cpow(f, 1.0 - 2.0 * s),
            k_exp: -s,
        };
        let cf = side_f.c;
        let cfn = side_f.coeff.norm();
        let tail_f = |kk: u64| {
            // F(x) ≤ e^{−x}/(x·2K₀(2)); the bound for k > K decreases geometrically
            let k1 = kk as f64 + 1.0;
            let growth = (-1.0 - s.re).max(0.0);
            let rho = (1.0 + 1.0 / k1).powf(growth) * (-cf).exp();
            (rho < 1.0).then(|| {
                let first = k1.powf(-s.re) * (-k1 * cf).exp() / (k1 * cf * f_norm);
                cfn * first / (1.0 - rho)
            })
        };
        let (ef, kf, tf) = side_f.sum(
            |x| f_of(x).map(|e| Estimate { value: Complex64::new(e.value, 0.0), error: e.error }),
            tail_f,
            tol,
            p.cutoff,
        )?;
        // |δ|′^{1/2−s} Σ_k f^{2s−1} k^{s−1} χ(k) V(kf²A/|δ|′)
        let side_v = Side {
            twist: t,
            set: &set,
            c: f * f * a / norm,
            coeff: cpow(norm, 0.5 - s) * cpow(f, 2.0 * s - 1.0),
            k_exp: s - 1.0,
        };
        let cv = side_v.c;
        let cvn = side_v.coeff.norm();
        let tail_v = |kk: u64| {
            // |V(x)| ≤ M(πx)^{−σ′}; Σ_{k>K} k^{Re s−1−σ′} ≤ K^{Re s−σ′}/(σ′−Re s)
            let m = bound_kernel.majorant(cv);
            let kk = kk as f64;
            Some(cvn * m * kk.powf(s.re - sigma_b) / (sigma_b - s.re))
        };
        let (ev, kv, tv) = side_v.sum(|x| kernel.eval(x), tail_v, tol, p.cutoff)?;
        value += ef.value + ev.value;
        error += ef.error + ev.error;
        tail_bound += tf + tv;
        k_max_f = k_max_f.max(kf);
        k_max_v = k_max_v.max(kv);
    }
    Ok(AfeReport {
        value,
        error,
        a,
        k_max_f,
        k_max_v,
        tail_bound,
    })
}
