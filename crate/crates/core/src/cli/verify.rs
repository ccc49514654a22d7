//! Named verification suites; each emits one record per check and a summary.

use clap::ValueEnum;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use super::config::RunConfig;
use super::output::{record, Sink};
use super::VerifyArgs;
use crate::error::{Error, Result};
use crate::kloosterman::{classical_kloosterman, crt_factorize, estermann_bound, global_kl, weil_bound, KlParams};
use crate::padic::{j_singular, j_singular_brute, LocalSingularParams};
use crate::sarith::{
    decompose_discriminant, lambda_divisor_sum, moebius_identity_1, moebius_identity_2, RamificationSet, SRational,
};
use crate::special::{f_of, mellin_f_value, tanh_sinh};
use crate::square::{sigma_square_direct, sigma_square_residue, Sign, SquareTermInstance};
use crate::util::prime_power_q;
use crate::zagier::{fe_factor, lfun_afe_with, lfun_series, LSeriesParams};
use crate::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Crt,
    Weil,
    Afe,
    FeInvolution,
    Mellin,
    SigmaSquare,
    LocalIntegral,
    Moebius,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Crt => "crt",
            Suite::Weil => "weil",
            Suite::Afe => "afe",
            Suite::FeInvolution => "fe-involution",
            Suite::Mellin => "mellin",
            Suite::SigmaSquare => "sigma-square",
            Suite::LocalIntegral => "local-integral",
            Suite::Moebius => "moebius",
        }
    }
}

/// One measured check: passes iff `measured ≤ threshold`.
struct Check {
    name: String,
    measured: f64,
    threshold: f64,
    error: f64,
    cases: u64,
}

impl Check {
    fn new(name: impl Into<String>, measured: f64, threshold: f64, error: f64, cases: u64) -> Self {
        Self {
            name: name.into(),
            measured,
            threshold,
            error,
            cases,
        }
    }

    fn pass(&self) -> bool {
        self.measured <= self.threshold
    }
}

pub fn run(a: &VerifyArgs, cfg: &RunConfig, sink: &mut Sink) -> Result<bool> {
    let checks = match a.suite {
        Suite::Crt => crt(a.samples.unwrap_or(200), cfg)?,
        Suite::Weil => weil(a.cmax, a.samples.unwrap_or(20), cfg)?,
        Suite::Afe => afe(&a.delta, cfg)?,
        Suite::FeInvolution => fe_involution(&a.delta, a.samples.unwrap_or(20), cfg)?,
        Suite::Mellin => mellin()?,
        Suite::SigmaSquare => sigma_square(&a.n, cfg)?,
        Suite::LocalIntegral => local_integral()?,
        Suite::Moebius => moebius(a.nmax)?,
    };
    let suite = a.suite.name();
    for c in &checks {
        let mut r = record("check", json!(c.measured), c.error, suite);
        r.insert("suite".into(), json!(suite));
        r.insert("check".into(), json!(c.name));
        r.insert("threshold".into(), json!(c.threshold));
        r.insert("cases".into(), json!(c.cases));
        r.insert("pass".into(), json!(c.pass()));
        sink.emit(r);
    }
    let failures = checks.iter().filter(|c| !c.pass()).count();
    let mut r = record("verify", json!(failures), 0.0, suite);
    r.insert("suite".into(), json!(suite));
    r.insert("checks".into(), json!(checks.len()));
    r.insert("pass".into(), json!(failures == 0));
    sink.emit(r);
    Ok(failures == 0)
}

/// ξ = t·∏q^e with |t| ≤ 10⁴ and |e| ≤ 3.
fn random_s_rational(rng: &mut ChaCha8Rng, set: &RamificationSet) -> Result<SRational> {
    let mut x = Q::from_integer(rng.gen_range(-10_000i64..=10_000).into());
    for &q in set.primes() {
        x *= prime_power_q(q, rng.gen_range(-3..=3));
    }
    SRational::new(x, set)
}

/// Random (k, f, ξ, m) with k, f prime to S and kf² ≤ `max_modulus`.
pub(crate) fn random_kl(rng: &mut ChaCha8Rng, set: &RamificationSet, max_modulus: u64) -> Result<KlParams> {
    loop {
        let f = rng.gen_range(1..=(max_modulus as f64).sqrt() as u64);
        let k = rng.gen_range(1..=max_modulus / (f * f));
        if set.is_coprime(k) && set.is_coprime(f) {
            return KlParams::new(k, f, random_s_rational(rng, set)?, random_s_rational(rng, set)?);
        }
    }
}

fn crt(samples: usize, cfg: &RunConfig) -> Result<Vec<Check>> {
    let set = cfg.set_of_primes()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let params = (0..samples)
        .map(|_| random_kl(&mut rng, &set, 10_000))
        .collect::<Result<Vec<_>>>()?;
    let errs = params
        .par_iter()
        .map(|p| {
            let g = global_kl(p)?;
            let c = crt_factorize(p)?;
            Ok((c.product - g).norm() / g.norm().max(1.0))
        })
        .collect::<Result<Vec<f64>>>()?;
    let worst = errs.iter().copied().fold(0.0, f64::max);
    Ok(vec![Check::new("product-of-locals", worst, 1e-9, 0.0, samples as u64)])
}

fn weil(cmax: u64, samples: usize, cfg: &RunConfig) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let cases: Vec<(i64, i64, u64)> = (1..=cmax)
        .flat_map(|c| (0..samples).map(move |_| c))
        .map(|c| (rng.gen_range(-10_000..=10_000), rng.gen_range(-10_000..=10_000), c))
        .collect();
    let ratios: Vec<(f64, f64)> = cases
        .par_iter()
        .map(|&(a, b, c)| {
            let s = classical_kloosterman(a, b, c).norm();
            let excess = |bound: f64| (s - bound - 1e-9).max(0.0);
            (excess(weil_bound(a, b, c)), excess(estermann_bound(a, b, c)))
        })
        .collect();
    let count = |f: fn(&(f64, f64)) -> f64| ratios.iter().filter(|r| f(r) > 0.0).count() as f64;
    let n = cases.len() as u64;
    Ok(vec![
        Check::new("weil-2-sqrt-gcd-sqrt-c", count(|r| r.0), 0.0, 0.0, n),
        Check::new("divisor-weil", count(|r| r.1), 0.0, 0.0, n),
    ])
}

fn afe(delta: &str, cfg: &RunConfig) -> Result<Vec<Check>> {
    let set = cfg.set_of_primes()?;
    let p = LSeriesParams::new(SRational::parse(delta, &set)?, cfg.cutoff, cfg.tolerance)?;
    let mut checks = Vec::new();
    for s in [Complex64::new(2.0, 0.0), Complex64::new(0.5, 3.0), Complex64::new(0.25, -1.0)] {
        let contour = cfg.contour(s)?;
        let vals = [1.0, 1.5, 2.0, 3.0]
            .par_iter()
            .map(|&a| lfun_afe_with(s, &p, a, contour))
            .collect::<Result<Vec<_>>>()?;
        let spread = vals.iter().map(|r| (r.value - vals[0].value).norm()).fold(0.0, f64::max);
        let err = vals.iter().map(|r| r.error).fold(0.0, f64::max);
        checks.push(Check::new(format!("a-independence s={s}"), spread, 1e-6, err, vals.len() as u64));
        if s.re > 1.0 && !p.discriminant()?.is_square() {
            let series = lfun_series(s, &p)?;
            let diff = (series.value - vals[0].value).norm();
            checks.push(Check::new(format!("series s={s}"), diff, 1e-4, err + series.error, 1));
        }
    }
    Ok(checks)
}

fn fe_involution(delta: &str, samples: usize, cfg: &RunConfig) -> Result<Vec<Check>> {
    let set = cfg.set_of_primes()?;
    let d = decompose_discriminant(&SRational::parse(delta, &set)?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut worst: f64 = 0.0;
    let mut done = 0u64;
    while done < samples as u64 {
        let s = Complex64::new(rng.gen_range(-3.0..4.0), rng.gen_range(-15.0..15.0));
        let (a, b) = match (fe_factor(s, &d), fe_factor(Complex64::new(1.0, 0.0) - s, &d)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(Error::Pole(_)), _) | (_, Err(Error::Pole(_))) => continue,
            (Err(e), _) | (_, Err(e)) => return Err(e),
        };
        worst = worst.max((a * b - 1.0).norm());
        done += 1;
    }
    Ok(vec![Check::new("product-is-one", worst, 1e-10, 0.0, done)])
}

/// ∫₀^∞ x^{s−1}F(x) dx by tanh-sinh on (0, 1] and [1, 80]; F(80) is below e^{−80}.
pub(crate) fn mellin_numeric(s: Complex64) -> Result<crate::special::Estimate<Complex64>> {
    let g = |x: f64| {
        let fx = f_of(x).map(|e| e.value).unwrap_or(f64::NAN);
        (s - 1.0).scale(x.ln()).exp() * fx
    };
    let a = tanh_sinh(g, 0.0, 1.0, 1e-12)?;
    let b = tanh_sinh(g, 1.0, 80.0, 1e-12)?;
    Ok(crate::special::Estimate {
        value: a.value + b.value,
        error: a.error + b.error,
    })
}

fn mellin() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for s in [
        Complex64::new(0.5, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(2.0, 0.0),
        Complex64::new(1.0, 1.0),
    ] {
        let num = mellin_numeric(s)?;
        let closed = mellin_f_value(s)?;
        let diff = (num.value - closed.value).norm();
        checks.push(Check::new(format!("closed-form s={s}"), diff, 1e-6, num.error + closed.error, 1));
    }
    let mut worst: f64 = 0.0;
    let mut n = 0;
    for sigma in [0.25, 0.5, 1.0, 1.5, 2.0] {
        for t in [-3.0, -1.0, 1.0, 3.0] {
            let s = Complex64::new(sigma, t);
            worst = worst.max((mellin_f_value(s)?.value + mellin_f_value(-s)?.value).norm());
            n += 1;
        }
    }
    checks.push(Check::new("odd", worst, 1e-9, 0.0, n));
    Ok(checks)
}

fn sigma_square(list: &str, cfg: &RunConfig) -> Result<Vec<Check>> {
    let set = cfg.set_of_primes()?;
    let ns: Vec<u64> = list
        .split(',')
        .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("n: cannot parse {x:?}"))))
        .collect::<Result<_>>()?;
    let mut checks = Vec::new();
    for n in ns {
        for sign in [Sign::Plus, Sign::Minus] {
            let mut inst = SquareTermInstance::new(n, vec![0; set.len()], sign, set.clone(), cfg.weights(&set))?;
            inst.tolerance = cfg.tolerance;
            inst.cutoff = cfg.cutoff;
            let d = sigma_square_direct(&inst)?;
            let r = sigma_square_residue(&inst)?;
            let rel = (d.value - r.value).abs() / (1.0 + r.value.abs());
            let name = format!("n={n},sign={}", if sign == Sign::Plus { "+" } else { "-" });
            checks.push(Check::new(name, rel, 1e-4, d.error + r.error, d.traces.len() as u64));
        }
    }
    Ok(checks)
}

fn local_integral() -> Result<Vec<Check>> {
    let mut cases = Vec::new();
    for (l, ns) in [(3u64, ["1", "9"]), (5, ["4", "-1"])] {
        for n in ns {
            for sigma in [-1.0, 0.0, 1.0] {
                for eps in [-1i8, 0, 1] {
                    for w in -2..=4i64 {
                        cases.push((l, n, sigma, eps, w));
                    }
                }
            }
        }
    }
    let results = cases
        .par_iter()
        .map(|&(l, n, sigma, eps, w)| {
            let eta = prime_power_q(l, -w) * Q::from_integer(2.into());
            let n = crate::util::parse_rational(n)?;
            let p = LocalSingularParams::new(Complex64::new(sigma, 0.0), eta, n, l, eps, None)?;
            let d = j_singular(&p)?;
            let (brute, tail) = j_singular_brute(&p, p.cutoff + 8, 0)?;
            Ok(((brute - d.value).norm() / (tail + 1e-12), d.terms.len()))
        })
        .collect::<Result<Vec<(f64, usize)>>>()?;
    let worst = results.iter().map(|r| r.0).fold(0.0, f64::max);
    let most_terms = results.iter().map(|r| r.1).max().unwrap_or(0);
    let n = results.len() as u64;
    Ok(vec![
        Check::new("closed-vs-brute-over-tail", worst, 1.0, 0.0, n),
        Check::new("terms", most_terms as f64, 3.0, 0.0, n),
    ])
}

fn moebius(nmax: u64) -> Result<Vec<Check>> {
    let one = Q::from_integer(1.into());
    let bad = (1..=nmax)
        .into_par_iter()
        .map(|n| {
            let i1 = moebius_identity_1(n)?;
            let (first, second) = moebius_identity_2(n)?;
            let lam = lambda_divisor_sum(n)?;
            Ok([(i1 != one) as u64, (first != lam) as u64, (second != lam.neg()) as u64])
        })
        .collect::<Result<Vec<[u64; 3]>>>()?;
    let sum = |i: usize| bad.iter().map(|b| b[i]).sum::<u64>() as f64;
    Ok(vec![
        Check::new("moebius-sum-is-one", sum(0), 0.0, 0.0, nmax),
        Check::new("log-f-weighted-is-lambda-sum", sum(1), 0.0, 0.0, nmax),
        Check::new("log-k-weighted-is-minus-lambda-sum", sum(2), 0.0, 0.0, nmax),
    ])
}
