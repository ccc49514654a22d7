//! Σ(□) two ways: the defining double sum and the residue identity.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use super::{enumerate_square_traces, Sign, SquareTermInstance, SquareTrace};
use crate::error::{Error, Result};
use crate::sarith::{decompose_discriminant, divisors, RamificationSet, SRational};
use crate::special::{f_of, normalizer, ContourSpec, Estimate, FTildeGrid, VKernel};
use crate::zagier::residue_term;

/// Shift of the contour used for the V-tail majorant.
const MAJORANT_SHIFT: f64 = 8.0;

#[derive(Clone, Debug, Serialize)]
pub struct TraceContribution {
    pub trace: SquareTrace,
    /// θ_∞^±(T/2√(nq^ν))·∏θ_{q_i}(T, ±nq^ν).
    pub weight: f64,
    /// σ^(q), which fixes |δ|′ = (σ^(q))².
    pub sigma_q: u64,
    pub term: Estimate<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SquareReport {
    pub value: f64,
    pub error: f64,
    pub method: &'static str,
    pub traces: Vec<TraceContribution>,
}

/// Traces with nonzero weight, paired with their weight and σ^(q).
fn weighted_traces(inst: &SquareTermInstance) -> Result<Vec<(SquareTrace, f64, u64)>> {
    let norm = inst.signed_norm();
    let scale = inst.scale();
    let inf = match inst.sign {
        Sign::Plus => &inst.weights.inf_plus,
        Sign::Minus => &inst.weights.inf_minus,
    };
    let mut out = Vec::new();
    for tr in enumerate_square_traces(inst)? {
        let mut w = inf.eval(crate::util::q_to_f64(&tr.t) / scale);
        for qw in &inst.weights.q {
            if w == 0.0 {
                break;
            }
            w *= qw.eval(&tr.t, &norm);
        }
        if w == 0.0 {
            continue;
        }
        let delta = SRational::new(tr.delta(), &inst.set)?;
        let sq = decompose_discriminant(&delta)?.sigma_prime_to_s();
        out.push((tr, w, sq));
    }
    Ok(out)
}

fn assemble(
    weighted: Vec<(SquareTrace, f64, u64)>,
    terms: &BTreeMap<u64, Estimate<f64>>,
    method: &'static str,
) -> SquareReport {
    let mut value = 0.0;
    let mut error = 0.0;
    let traces = weighted
        .into_iter()
        .map(|(trace, weight, sigma_q)| {
            let term = terms[&sigma_q];
            value += weight * term.value;
            error += weight.abs() * term.error;
            TraceContribution {
                trace,
                weight,
                sigma_q,
                term,
            }
        })
        .collect();
    SquareReport {
        value,
        error,
        method,
        traces,
    }
}

/// The defining sum: per trace, Σ_{f|σ^(q)} Σ_k (1/kf)·[F(x) + x·V_{0,1}(x)] with x = kf²/σ^(q),
/// where k runs over integers prime to S and to σ^(q)/f.
pub fn sigma_square_direct(inst: &SquareTermInstance) -> Result<SquareReport> {
    let weighted = weighted_traces(inst)?;
    let mut keys: Vec<u64> = weighted.iter().map(|w| w.2).collect();
    keys.sort_unstable();
    keys.dedup();
    if keys.is_empty() {
        return Ok(assemble(weighted, &BTreeMap::new(), "direct"));
    }
    let one = Complex64::new(1.0, 0.0);
    let contour = ContourSpec::default_for(one);
    let eps = vec![1i8; inst.set.len()];
    let kernel = VKernel::new(0, &eps, &inst.set, one, &FTildeGrid::new(contour)?)?;
    let shifted = ContourSpec {
        sigma: contour.sigma + MAJORANT_SHIFT,
        ..contour
    };
    let bound = VKernel::new(0, &eps, &inst.set, one, &FTildeGrid::new(shifted)?)?;
    let per_key = inst.tolerance / (2.0 * weighted.len() as f64);
    let computed: Vec<(u64, Estimate<f64>)> = keys
        .par_iter()
        .map(|&sq| {
            direct_term(sq, &inst.set, &kernel, &bound, per_key, inst.cutoff).map(|e| (sq, e))
        })
        .collect::<Result<_>>()?;
    Ok(assemble(weighted, &computed.into_iter().collect(), "direct"))
}

fn direct_term(
    sq: u64,
    set: &RamificationSet,
    kernel: &VKernel,
    bound: &VKernel,
    tol: f64,
    cutoff: u64,
) -> Result<Estimate<f64>> {
    let f_norm = normalizer()?.value;
    let sigma_b = bound.contour.sigma;
    let fs = divisors(sq)?;
    let tol = tol / fs.len() as f64;
    let mut value = 0.0;
    let mut error = 0.0;
    for f in fs {
        let cofactor = sq / f;
        let ff = f as f64;
        let c = ff * ff / sq as f64;
        let tail = |kk: u64| {
            let k1 = kk as f64 + 1.0;
            // F(x) ≤ e^{−x}/(x·2K₀(2)), summed geometrically from k = K+1
            let tf = (-k1 * c).exp() / (k1 * k1 * c * f_norm * ff) / (1.0 - (-c).exp());
            // x|V(x)|/(kf) = (f/σ^(q))|V(x)| ≤ (f/σ^(q))·M(πx)^{−σ′}
            let tv = ff / sq as f64 * bound.majorant(c) * (kk as f64).powf(1.0 - sigma_b) / (sigma_b - 1.0);
            tf + tv
        };
        let mut k = 0u64;
        loop {
            k += 1;
            if k > cutoff {
                return Err(Error::Uncertified {
                    achieved: tail(cutoff),
                    wanted: tol,
                });
            }
            if !set.is_coprime(k) || k.gcd(&cofactor) != 1 {
                continue;
            }
            let x = k as f64 * c;
            let fx = f_of(x)?;
            let vx = kernel.eval(x)?;
            let w = 1.0 / (k as f64 * ff);
            value += w * (fx.value + x * vx.value.re);
            error += w * (fx.error + x * (vx.error + vx.value.im.abs()));
            if x > 1.0 && tail(k) <= tol {
                error += tail(k);
                break;
            }
        }
    }
    Ok(Estimate { value, error })
}

/// The residue identity: per trace, P + R·log σ^(q) from the Laurent data of L^S(s, σ²) at s = 1.
pub fn sigma_square_residue(inst: &SquareTermInstance) -> Result<SquareReport> {
    let weighted = weighted_traces(inst)?;
    let mut terms = BTreeMap::new();
    for (tr, _, sq) in &weighted {
        if terms.contains_key(sq) {
            continue;
        }
        let delta = SRational::new(tr.delta(), &inst.set)?;
        terms.insert(*sq, residue_term(&delta, *sq as f64)?);
    }
    Ok(assemble(weighted, &terms, "residue"))
}
