//! Square discriminants: L^S(s, σ²) = ∏(1 − q_i^{−s})·r(s)·ζ(s) with
//! r(s) = Σ_{f|σ^(q)} f^{1−2s} Σ_{k|σ^(q)/f} μ(k)k^{−s}.

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sarith::{decompose_discriminant, divisors, moebius_identity_1, moebius_identity_2, mu, LogCombination, SRational};
use crate::special::{zeta, Estimate, LaurentData, EULER_GAMMA};
use crate::util::q_to_f64;
use crate::Q;

fn sigma_q(delta: &SRational) -> Result<u64> {
    let d = decompose_discriminant(delta)?;
    if !d.is_square() {
        return Err(Error::NotSquare(crate::util::format_rational(delta.value())));
    }
    Ok(d.sigma_prime_to_s())
}

fn cpow(x: f64, s: Complex64) -> Complex64 {
    (s * x.ln()).exp()
}

/// L^S(s, δ) for square δ and s ≠ 1.
pub fn lfun_square(s: Complex64, delta: &SRational) -> Result<Estimate<Complex64>> {
    let sq = sigma_q(delta)?;
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole("L^S(s, δ) for square δ has a pole at s = 1".into()));
    }
    let mut euler = Complex64::new(1.0, 0.0);
    for &q in delta.set().primes() {
        euler *= 1.0 - cpow(q as f64, -s);
    }
    let mut r = Complex64::new(0.0, 0.0);
    for f in divisors(sq)? {
        let mut inner = Complex64::new(0.0, 0.0);
        for k in divisors(sq / f)? {
            let m = mu(k)?;
            if m != 0 {
                inner += cpow(k as f64, -s) * m as f64;
            }
        }
        r += cpow(f as f64, 1.0 - 2.0 * s) * inner;
    }
    let z = zeta(s)?;
    let factor = euler * r;
    Ok(Estimate {
        value: factor * z.value,
        error: factor.norm() * z.error,
    })
}

/// Laurent data of L^S(s, σ²) at s = 1, kept exact where possible.
#[derive(Clone, Debug, Serialize)]
pub struct SquareLaurent {
    /// The residue ∏(1 − 1/q_i)·Σ_{f|σ^(q)} (1/f) Σ μ(k)/k as an exact rational.
    #[serde(serialize_with = "ser_q")]
    pub residue_exact: Q,
    /// Finite part = euler_coefficient·γ + log_part.
    #[serde(serialize_with = "ser_q")]
    pub euler_coefficient: Q,
    #[serde(serialize_with = "ser_log")]
    pub log_part: LogCombination,
    pub laurent: LaurentData,
}

fn ser_q<S: serde::Serializer>(q: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::util::format_rational(q))
}

fn ser_log<S: serde::Serializer>(l: &LogCombination, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut m = s.serialize_map(Some(l.coeffs.len()))?;
    for (p, c) in &l.coeffs {
        m.serialize_entry(&format!("log {p}"), &crate::util::format_rational(c))?;
    }
    m.end()
}

fn scale(l: &LogCombination, c: &Q) -> LogCombination {
    LogCombination {
        coeffs: l.coeffs.iter().map(|(&p, v)| (p, v * c)).filter(|(_, v)| !v.is_zero()).collect(),
    }
}

fn add(a: &LogCombination, b: &LogCombination) -> LogCombination {
    let mut out = a.clone();
    for (&p, v) in &b.coeffs {
        *out.coeffs.entry(p).or_insert_with(Q::zero) += v;
    }
    out.coeffs.retain(|_, v| !v.is_zero());
    out
}

/// Residue R and finite part P of L^S(s, δ) at s = 1 for square δ.
pub fn square_laurent(delta: &SRational) -> Result<SquareLaurent> {
    let sq = sigma_q(delta)?;
    let mut euler = Q::one();
    let mut q_logs = LogCombination::default();
    for &q in delta.set().primes() {
        euler *= Q::new((q as i64 - 1).into(), (q as i64).into());
        q_logs.add_log(q, &Q::new(1.into(), (q as i64 - 1).into()))?;
    }
    let r1 = moebius_identity_1(sq)?;
    let (first, second) = moebius_identity_2(sq)?;
    // r′(1) = −2 Σ(log f/f)Σμ(k)/k − Σ(1/f)Σμ(k)log k/k
    let r_prime = add(&scale(&first, &Q::from_integer((-2).into())), &second.neg());
    // E(s) = ∏(1−q^{−s})r(s): E′(1) = ∏(1−1/q)·[r(1)Σ log q/(q−1) + r′(1)]
    let log_part = scale(&add(&scale(&q_logs, &r1), &r_prime), &euler);
    let residue_exact = &euler * &r1;
    let euler_coefficient = residue_exact.clone();
    let finite = q_to_f64(&euler_coefficient) * EULER_GAMMA + log_part.to_f64();
    Ok(SquareLaurent {
        laurent: LaurentData {
            residue: Complex64::new(q_to_f64(&residue_exact), 0.0),
            finite_part: Complex64::new(finite, 0.0),
            center: Complex64::new(1.0, 0.0),
        },
        residue_exact,
        euler_coefficient,
        log_part,
    })
}

/// res_{s=0} F̃(s)·L^S(1+s, δ)·A^s = P + R·log A for square δ.
pub fn residue_term(delta: &SRational, a: f64) -> Result<Estimate<f64>> {
    if !(a > 0.0) {
        return Err(Error::Domain(format!("A = {a} must be positive")));
    }
    let l = square_laurent(delta)?;
    let value = l.laurent.finite_part.re + l.laurent.residue.re * a.ln();
    Ok(Estimate {
        value,
        error: 8.0 * f64::EPSILON * (l.laurent.finite_part.re.abs() + (l.laurent.residue.re * a.ln()).abs() + 1.0),
    })
}
