//! Acceptance criteria. Each prints one PASS/FAIL line; the process fails if any criterion fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use trace_elliptic::kloosterman::{
    bound_local, classical_kloosterman, crt_factorize, global_kl, local_kl, KlParams, LocalBoundCase, LocalKlParams,
};
use trace_elliptic::padic::{j_singular, j_singular_brute, LocalSingularParams};
use trace_elliptic::sarith::{
    decompose_discriminant, height, height_sum_large, height_sum_small, moebius_identity_1, moebius_identity_2,
    LargeSumMode, RamificationSet, SRational, SumCutoffs,
};
use trace_elliptic::special::{f_of, mellin_f_value};
use trace_elliptic::square::{sigma_square_direct, sigma_square_residue, Sign, SquareTermInstance};
use trace_elliptic::zagier::{fe_factor, lfun_afe, lfun_series, LSeriesParams};

type Q = BigRational;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn e(num: i128, den: i128) -> Complex64 {
    let t = std::f64::consts::TAU * (num.rem_euclid(den) as f64 / den as f64);
    Complex64::new(t.cos(), t.sin())
}

fn set(primes: &[u64]) -> RamificationSet {
    RamificationSet::new(primes).unwrap()
}

fn s_rational(rng: &mut ChaCha8Rng, s: &RamificationSet) -> SRational {
    let mut x = q(rng.gen_range(-5000..=5000), 1);
    for &p in s.primes() {
        let k: i32 = rng.gen_range(-3..=3);
        x *= Q::from_integer(p.into()).pow(k);
    }
    SRational::new(x, s).unwrap()
}

fn crt_factorization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20240601);
    let sets = [set(&[2]), set(&[2, 3])];
    let mut params = Vec::new();
    while params.len() < 200 {
        let s = &sets[params.len() % 2];
        let f = rng.gen_range(1..=100u64);
        let k = rng.gen_range(1..=10_000 / (f * f));
        if s.primes().iter().any(|&p| k % p == 0 || f % p == 0) {
            continue;
        }
        params.push(KlParams::new(k, f, s_rational(&mut rng, s), s_rational(&mut rng, s)).unwrap());
    }
    let worst = params
        .par_iter()
        .map(|p| {
            let g = global_kl(p).unwrap();
            let c = crt_factorize(p).unwrap();
            (c.product - g).norm() / g.norm().max(1.0)
        })
        .reduce(|| 0.0, f64::max);
    outcome(worst <= 1e-9, format!("200 samples, worst relative gap {worst:.2e}"))
}

/// S(a, b; c) straight from the definition.
fn kloosterman_oracle(a: i64, b: i64, c: u64) -> Complex64 {
    let ci = c as i128;
    (0..c)
        .filter(|&x| gcd(x, c) == 1)
        .map(|x| {
            let inv = (1..c.max(2)).find(|&y| (x * y) % c == 1 % c).unwrap_or(0);
            e(a as i128 * x as i128 + b as i128 * inv as i128, ci)
        })
        .sum()
}

fn weil_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cases: Vec<(i64, i64, u64)> = (1..=500u64)
        .flat_map(|c| std::iter::repeat_n(c, 20))
        .map(|c| (rng.gen_range(-10_000..=10_000), rng.gen_range(-10_000..=10_000), c))
        .collect();
    let results: Vec<(f64, f64, u64)> = cases
        .par_iter()
        .map(|&(a, b, c)| {
            let lib = classical_kloosterman(a, b, c);
            let oracle = kloosterman_oracle(a, b, c);
            let g = gcd(gcd(a.unsigned_abs(), b.unsigned_abs()), c);
            let bound = 2.0 * (g as f64).sqrt() * (c as f64).sqrt();
            ((lib - oracle).norm(), oracle.norm() / bound, c)
        })
        .collect();
    let mismatch = results.iter().map(|r| r.0).fold(0.0, f64::max);
    let violations: Vec<&(f64, f64, u64)> = results.iter().filter(|r| r.1 > 1.0 + 1e-9).collect();
    let mut moduli: Vec<u64> = violations.iter().map(|r| r.2).collect();
    moduli.dedup();
    let worst = results.iter().map(|r| r.1).fold(0.0, f64::max);
    outcome(
        violations.is_empty() && mismatch < 1e-8,
        format!(
            "{} samples, {} violations over {} moduli (first {:?}), worst |S|/(2√g√c) = {worst:.3}, oracle gap {mismatch:.1e}",
            results.len(),
            violations.len(),
            moduli.len(),
            &moduli[..moduli.len().min(5)]
        ),
    )
}

fn valuation(x: u64, l: u64, cap: u32) -> u32 {
    if x == 0 {
        return cap;
    }
    let (mut x, mut v) = (x, 0);
    while x % l == 0 {
        x /= l;
        v += 1;
    }
    v.min(cap)
}

/// The vanishing prediction: no root of a² ≡ 4m (ℓ^{2v}), or v(ξ) outside {u + h, u − 1 + h, ...}
/// where h = ½min{2v, v(m)} and only v(ξ) ≥ u + h or v(ξ) = u − 1 + h survive.
fn predicted_zero(l: u64, u: u32, v: u32, xi: u64, m: u64) -> bool {
    let sq = l.pow(2 * v);
    let target = 4 * m % sq;
    if !(0..sq).any(|a| a * a % sq == target) {
        return true;
    }
    let cap = u + 2 * v;
    let h = valuation(m, l, cap).min(2 * v) as f64 / 2.0;
    let xv = valuation(xi, l, cap) as f64;
    !(xv >= u as f64 + h || xv == u as f64 - 1.0 + h)
}

fn local_vanishing() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut cases = Vec::new();
    for l in [3u64, 5, 7] {
        for u in 0..=3u32 {
            for v in 0..=2u32 {
                let modulus = l.pow(u + 2 * v);
                if modulus <= 125 {
                    for xi in 0..modulus {
                        for m in 0..modulus {
                            cases.push((l, u, v, xi, m));
                        }
                    }
                    continue;
                }
                // every pair of valuations, three random units each
                let cap = u + 2 * v;
                for ex in 0..=cap {
                    for em in 0..=cap {
                        for _ in 0..3 {
                            let mut unit = || loop {
                                let x = rng.gen_range(1..modulus);
                                if x % l != 0 {
                                    return x;
                                }
                            };
                            let xi = (l.pow(ex) * unit()) % modulus;
                            let m = (l.pow(em) * unit()) % modulus;
                            cases.push((l, u, v, xi, m));
                        }
                    }
                }
            }
        }
    }
    let results: Vec<(bool, f64, bool)> = cases
        .par_iter()
        .map(|&(l, u, v, xi, m)| {
            let p = LocalKlParams::from_residues(l, u, v, xi as i128, m as i128).unwrap();
            let value = local_kl(&p).norm();
            let predicted = predicted_zero(l, u, v, xi, m);
            let case = bound_local(&p).unwrap().case;
            let lib_predicts = matches!(case, LocalBoundCase::Vanishing | LocalBoundCase::NoSolution);
            (predicted, value, predicted == lib_predicts)
        })
        .collect();
    let predicted = results.iter().filter(|r| r.0).count();
    let exceptions = results.iter().filter(|r| r.0 && r.1 >= 1e-12).count();
    let disagreements = results.iter().filter(|r| !r.2).count();
    outcome(
        results.len() >= 1000 && exceptions == 0 && disagreements == 0,
        format!(
            "{} cases, {predicted} predicted zero, {exceptions} exceptions, {disagreements} case disagreements",
            results.len()
        ),
    )
}

/// K_s(2) = ∫₀^∞ e^{−2cosh t}cosh(st) dt by the trapezoid rule.
fn bessel_k_oracle(s: Complex64) -> Complex64 {
    let h = 1e-3;
    let mut acc = Complex64::new(0.5, 0.0) * (-2.0f64).exp();
    let mut t = h;
    while t < 8.0 {
        acc += (s * t).cosh() * (-2.0 * t.cosh()).exp();
        t += h;
    }
    acc * h
}

fn mellin_identity() -> Outcome {
    let k0 = bessel_k_oracle(Complex64::new(0.0, 0.0)).re;
    let mut worst: f64 = 0.0;
    let mut lib_gap: f64 = 0.0;
    for s in [
        Complex64::new(0.5, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(2.0, 0.0),
        Complex64::new(1.0, 1.0),
    ] {
        // x = e^y: ∫ e^{sy}F(e^y) dy
        let h = 0.01;
        let numeric: Complex64 = (-7000..=500)
            .map(|i| {
                let y = i as f64 * h;
                (s * y).exp() * f_of(y.exp()).unwrap().value
            })
            .sum::<Complex64>()
            * h;
        let closed = bessel_k_oracle(s) / (s * k0);
        worst = worst.max((numeric - closed).norm());
        lib_gap = lib_gap.max((mellin_f_value(s).unwrap().value - closed).norm());
    }
    let mut odd: f64 = 0.0;
    for sigma in [0.25, 0.5, 1.0, 1.5, 2.0] {
        for t in [-3.0, -1.0, 1.0, 3.0] {
            let s = Complex64::new(sigma, t);
            odd = odd.max((mellin_f_value(s).unwrap().value + mellin_f_value(-s).unwrap().value).norm());
        }
    }
    outcome(
        worst < 1e-6 && lib_gap < 1e-6 && odd < 1e-9,
        format!("quadrature gap {worst:.1e}, closed-form gap {lib_gap:.1e}, oddness {odd:.1e} on 20 points"),
    )
}

const DELTAS: [i64; 6] = [-3, -4, 5, -7, 13, -8];

fn afe() -> Outcome {
    let mut jobs = Vec::new();
    for primes in [&[2u64][..], &[2, 3][..]] {
        for d in DELTAS {
            jobs.push((primes, d));
        }
    }
    let results: Vec<(f64, f64)> = jobs
        .par_iter()
        .map(|&(primes, d)| {
            let s_set = set(primes);
            let p = LSeriesParams::with_defaults(SRational::from_int(d, &s_set)).unwrap();
            let mut spread: f64 = 0.0;
            for s in [Complex64::new(0.5, 2.0), Complex64::new(2.0, 0.0)] {
                let v: Vec<Complex64> = [1.0, 2.0, 3.0]
                    .iter()
                    .map(|&a| lfun_afe(s, &p, a).unwrap().value)
                    .collect();
                spread = spread.max(v.iter().map(|x| (x - v[0]).norm()).fold(0.0, f64::max));
            }
            let s2 = Complex64::new(2.0, 0.0);
            let series = lfun_series(s2, &p).unwrap().value;
            let gap = (lfun_afe(s2, &p, 1.0).unwrap().value - series).norm();
            (spread, gap)
        })
        .collect();
    let spread = results.iter().map(|r| r.0).fold(0.0, f64::max);
    let gap = results.iter().map(|r| r.1).fold(0.0, f64::max);
    outcome(
        spread < 1e-6 && gap < 1e-4,
        format!("12 (δ, S) pairs, A-spread {spread:.1e}, series gap at s=2 {gap:.1e}"),
    )
}

fn fe_involution() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for primes in [&[2u64][..], &[2, 3][..]] {
        let s_set = set(primes);
        for d in DELTAS {
            let disc = decompose_discriminant(&SRational::from_int(d, &s_set)).unwrap();
            let mut done = 0;
            while done < 20 {
                let s = Complex64::new(rng.gen_range(-3.0..4.0), rng.gen_range(-15.0..15.0));
                let (Ok(a), Ok(b)) = (fe_factor(s, &disc), fe_factor(1.0 - s, &disc)) else {
                    continue;
                };
                worst = worst.max((a * b - 1.0).norm());
                done += 1;
                count += 1;
            }
        }
    }
    outcome(worst < 1e-10, format!("{count} points, worst |φ(s)φ(1−s) − 1| = {worst:.1e}"))
}

fn sigma_square() -> Outcome {
    let s_set = RamificationSet::two();
    let mut worst: f64 = 0.0;
    let mut lines = Vec::new();
    for n in [1u64, 3, 5, 15] {
        for sign in [Sign::Plus, Sign::Minus] {
            let inst = SquareTermInstance::toy(n, sign, &s_set).unwrap();
            let d = sigma_square_direct(&inst).unwrap();
            let r = sigma_square_residue(&inst).unwrap();
            let rel = (d.value - r.value).abs() / (1.0 + r.value.abs());
            worst = worst.max(rel);
            lines.push(format!("{n}{}:{:.6}", if sign == Sign::Plus { "+" } else { "-" }, r.value));
        }
    }
    outcome(worst <= 1e-4, format!("worst relative gap {worst:.1e}; values {}", lines.join(" ")))
}

fn singular_integral() -> Outcome {
    let mut cases = Vec::new();
    for (l, ns) in [(3u64, [1i64, 9]), (5, [4, -1])] {
        for n in ns {
            for sigma in [-1.0, 0.0, 1.0] {
                for eps in [-1i8, 0, 1] {
                    for w in -2..=4i32 {
                        cases.push((l, n, sigma, eps, w));
                    }
                }
            }
        }
    }
    let results: Vec<(bool, bool)> = cases
        .par_iter()
        .map(|&(l, n, sigma, eps, w)| {
            // |η|_ℓ = ℓ^w
            let eta = Q::from_integer(2.into()) * Q::from_integer(l.into()).pow(-w);
            let p = LocalSingularParams::new(Complex64::new(sigma, 0.0), eta, q(n, 1), l, eps, None).unwrap();
            let d = j_singular(&p).unwrap();
            let (brute, _) = j_singular_brute(&p, p.cutoff + 8, 0).unwrap();
            // Σ_{u ≥ L+8} ℓ^{−u(1+σ/2)}
            let r = (l as f64).powf(-(1.0 + sigma / 2.0));
            let tail = r.powi((p.cutoff + 8) as i32) / (1.0 - r);
            let shapes = d.terms.len() <= 3
                && d.terms.iter().filter(|t| t.geometric).count() <= 1
                && d.terms.iter().all(|t| t.coefficient.is_finite());
            ((brute - d.value).norm() <= tail + 1e-12, shapes)
        })
        .collect();
    let bad = results.iter().filter(|r| !r.0).count();
    let bad_shape = results.iter().filter(|r| !r.1).count();
    outcome(
        bad == 0 && bad_shape == 0,
        format!("{} cases, {bad} outside the tail bound, {bad_shape} malformed decompositions", results.len()),
    )
}

/// Σ_{d|n} Λ(d)/d as exact coefficients of log p.
fn lambda_oracle(n: u64) -> BTreeMap<u64, Q> {
    let mut out = BTreeMap::new();
    let mut rest = n;
    let mut p = 2;
    while p * p <= rest || rest > 1 {
        if p * p > rest {
            p = rest;
        }
        if rest.is_multiple_of(p) {
            let mut pk = 1;
            let mut c = Q::from_integer(0.into());
            while rest.is_multiple_of(p) {
                rest /= p;
                pk *= p;
                c += q(1, pk as i64);
            }
            out.insert(p, c);
        }
        p += 1;
    }
    out
}

fn moebius() -> Outcome {
    let one = q(1, 1);
    let bad = (1..=10_000u64)
        .into_par_iter()
        .filter(|&n| {
            let lam = lambda_oracle(n);
            let neg: BTreeMap<u64, Q> = lam.iter().map(|(&p, c)| (p, -c)).collect();
            let (first, second) = moebius_identity_2(n).unwrap();
            moebius_identity_1(n).unwrap() != one || first.coeffs != lam || second.coeffs != neg
        })
        .count();
    outcome(bad == 0, format!("n ≤ 10000, {bad} mismatches"))
}

fn height_sums() -> Outcome {
    let s_set = RamificationSet::two();
    let cut = SumCutoffs::default();
    let mut ratios = BTreeMap::<&str, (f64, f64)>::new();
    let mut record = |k, r: f64| {
        let e = ratios.entry(k).or_insert((f64::INFINITY, 0.0));
        e.0 = e.0.min(r);
        e.1 = e.1.max(r);
    };
    let mut ok = true;
    let mut brute_gap: f64 = 0.0;
    let mut tail_ratio: f64 = 0.0;
    for a in [1.0, 2.0, 4.0, 8.0] {
        for m in [2.0, 3.0] {
            let full = height_sum_large(a, m, LargeSumMode::Full, &s_set, 0.01, cut).unwrap();
            ok &= full.ratio.is_finite();
            tail_ratio = tail_ratio.max(full.tail_bound / full.value);
            record("large", full.ratio);
            for b in [4.0, 16.0, 64.0] {
                let above = height_sum_large(a, m, LargeSumMode::Above(b), &s_set, 0.01, cut).unwrap();
                ok &= above.ratio.is_finite();
                record("large-above-b", above.ratio);
            }
        }
        for b in [4.0, 16.0, 64.0] {
            for alpha in [0.25, 0.5] {
                let small = height_sum_small(a, b, alpha, &s_set, cut).unwrap();
                ok &= small.ratio.is_finite();
                record("small", small.ratio);
                // ξ = t/2^j; ⟦aξ⟧ ≤ b forces 2^j < b and |ξ| < b/a
                let mut brute = 0.0;
                for j in 0..7i64 {
                    let tmax = ((b / a) * (1i64 << j) as f64) as i64 + 1;
                    for t in -tmax..=tmax {
                        if j > 0 && t % 2 == 0 {
                            continue;
                        }
                        let xi = SRational::new(q(t, 1 << j), &s_set).unwrap();
                        let h = height(a, &xi);
                        if h <= b {
                            brute += h.powf(-alpha);
                        }
                    }
                }
                brute_gap = brute_gap.max((brute - small.value).abs() / brute);
            }
        }
    }
    ok &= brute_gap < 1e-12 && tail_ratio.is_finite();
    let report: Vec<String> = ratios
        .iter()
        .map(|(k, (lo, hi))| format!("{k} ratio in [{lo:.3}, {hi:.3}]"))
        .collect();
    outcome(ok, format!("{}; relative tail {tail_ratio:.1e}, brute gap {brute_gap:.1e}", report.join(", ")))
}

/// Name, check and optional time limit.
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn main() {
    let criteria: [Criterion; 10] = [
        ("crt-factorization", crt_factorization, Some(Duration::from_secs(60))),
        ("weil-bound", weil_bound, None),
        ("local-vanishing", local_vanishing, None),
        ("mellin-identity", mellin_identity, None),
        ("afe", afe, None),
        ("fe-involution", fe_involution, None),
        ("sigma-square-dual-path", sigma_square, Some(Duration::from_secs(300))),
        ("singular-integral", singular_integral, None),
        ("moebius-identities", moebius, Some(Duration::from_secs(30))),
        ("height-sums", height_sums, None),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut out = run();
        let took = start.elapsed();
        if let Some(limit) = limit {
            if took > *limit {
                out.pass = false;
                out.detail.push_str(&format!("; over the {}s limit", limit.as_secs()));
            }
        }
        if !out.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {:<24} {} ({:.1}s) {}",
            i + 1,
            name,
            if out.pass { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            out.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
