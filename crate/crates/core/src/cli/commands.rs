//! The single-shot subcommands.

use num_complex::Complex64;
use serde_json::{json, Value};

use super::config::RunConfig;
use super::output::{cx, rat, record, Sink};
use super::{parse_complex, AfeCheckArgs, KlArgs, LfunArgs, PadicArgs, SigmaSquareArgs, SquarePath, Via};
use crate::error::{Error, Result};
use crate::kloosterman::{bound_global, bound_local, crt_factorize, global_kl, KlParams};
use crate::padic::{e_ell, frac_part, modified_norm, omega_ell, sqrt_padic, valuation};
use crate::sarith::SRational;
use crate::square::{sigma_square_direct, sigma_square_residue, Sign, SquareReport, SquareTermInstance};
use crate::util::parse_rational;
use crate::zagier::{lfun_afe_with, lfun_series_report, lfun_square, LSeriesParams};

/// Relative agreement used by the `*_ok` flags.
const AGREE: f64 = 1e-9;

pub fn kl(a: &KlArgs, cfg: &RunConfig, sink: &mut Sink) -> Result<bool> {
    let set = cfg.set_of_primes()?;
    let p = KlParams::new(a.k, a.f, SRational::parse(&a.xi, &set)?, SRational::parse(&a.m, &set)?)?;
    let value = global_kl(&p)?;
    let crt = crt_factorize(&p)?;
    let bound = bound_global(&p, a.epsilon)?;
    let err = 8.0 * p.modulus() as f64 * f64::EPSILON;
    let crt_ok = (crt.product - value).norm() <= AGREE * value.norm().max(1.0);
    let factors = crt
        .factors
        .iter()
        .map(|lf| {
            let lb = bound_local(&lf.params)?;
            Ok(json!({
                "prime": lf.params.prime,
                "u": lf.params.u,
                "v": lf.params.v,
                "xi": lf.params.xi,
                "m": lf.params.m,
                "value": cx(lf.value),
                "case": lb.case,
                "bound": lb.bound,
                "consistent": lb.consistent,
            }))
        })
        .collect::<Result<Vec<Value>>>()?;
    let mut r = record("kl", cx(value), err, "definition");
    r.insert("k".into(), json!(a.k));
    r.insert("f".into(), json!(a.f));
    r.insert("xi".into(), rat(p.xi.value()));
    r.insert("m".into(), rat(p.m.value()));
    r.insert("S".into(), json!(set.primes()));
    r.insert("crt_product".into(), cx(crt.product));
    r.insert("crt_ok".into(), json!(crt_ok));
    r.insert("crt_factors".into(), Value::Array(factors));
    r.insert(
        "bound".into(),
        json!({
            "epsilon": bound.epsilon,
            "solvable": bound.solvable,
            "gcd_is_square": bound.gcd_is_square,
            "gate": bound.gate,
            "bound": bound.bound,
            "constant": bound.constant,
            "consistent": bound.consistent,
        }),
    );
    sink.emit(r);
    Ok(crt_ok && bound.consistent)
}

fn lseries(delta: &str, cfg: &RunConfig) -> Result<LSeriesParams> {
    let set = cfg.set_of_primes()?;
    LSeriesParams::new(SRational::parse(delta, &set)?, cfg.cutoff, cfg.tolerance)
}

/// L^S(s, δ) by the requested method; returns (value, error, method).
fn lvalue(s: Complex64, p: &LSeriesParams, via: Via, a: f64, cfg: &RunConfig) -> Result<(Complex64, f64, &'static str)> {
    if p.discriminant()?.is_square() {
        let e = lfun_square(s, &p.delta)?;
        return Ok((e.value, e.error, "square-zeta"));
    }
    match via {
        Via::Series => {
            let r = lfun_series_report(s, p)?;
            Ok((r.value, r.error, if r.hurwitz_tail { "series+hurwitz" } else { "series" }))
        }
        Via::Afe => {
            let r = lfun_afe_with(s, p, a, cfg.contour(s)?)?;
            Ok((r.value, r.error, "afe"))
        }
    }
}

pub fn lfun(a: &LfunArgs, cfg: &RunConfig, sink: &mut Sink) -> Result<bool> {
    let p = lseries(&a.delta, cfg)?;
    let s = parse_complex(&a.s)?;
    let (value, error, method) = lvalue(s, &p, a.via, a.a, cfg)?;
    let mut r = record("lfun", cx(value), error, method);
    r.insert("delta".into(), rat(p.delta.value()));
    r.insert("s".into(), cx(s));
    r.insert("S".into(), json!(cfg.primes));
    if a.via == Via::Afe {
        r.insert("a".into(), json!(a.a));
    }
    sink.emit(r);
    Ok(true)
}

fn parse_list<T: std::str::FromStr>(what: &str, s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| Error::Parse(format!("{what}: cannot parse {x:?}"))))
        .collect()
}

pub fn afe_check(a: &AfeCheckArgs, cfg: &RunConfig, sink: &mut Sink) -> Result<bool> {
    let p = lseries(&a.delta, cfg)?;
    let s = parse_complex(&a.s)?;
    let balances: Vec<f64> = parse_list("a", &a.a)?;
    if balances.is_empty() {
        return Err(Error::Domain("at least one balance parameter is required".into()));
    }
    let mut values = Vec::new();
    for &bal in &balances {
        let (v, e, method) = lvalue(s, &p, Via::Afe, bal, cfg)?;
        let mut r = record("afe", cx(v), e, method);
        r.insert("delta".into(), rat(p.delta.value()));
        r.insert("s".into(), cx(s));
        r.insert("a".into(), json!(bal));
        sink.emit(r);
        values.push((v, e));
    }
    let spread = values.iter().map(|(v, _)| (v - values[0].0).norm()).fold(0.0, f64::max);
    let error = values.iter().map(|(_, e)| *e).fold(0.0, f64::max);
    let threshold = 1e-6_f64.max(2.0 * error);
    let pass = spread <= threshold;
    let mut r = record("afe-check", json!(spread), error, "max |L_A - L_A0|");
    r.insert("threshold".into(), json!(threshold));
    r.insert("pass".into(), json!(pass));
    sink.emit(r);
    Ok(pass)
}

fn square_record(rep: &SquareReport, inst: &SquareTermInstance, with_traces: bool) -> serde_json::Map<String, Value> {
    let mut r = record("sigma-square", json!(rep.value), rep.error, rep.method);
    r.insert("n".into(), json!(inst.n));
    r.insert("nu".into(), json!(inst.nu));
    r.insert("sign".into(), json!(inst.sign));
    r.insert("S".into(), json!(inst.set.primes()));
    r.insert("traces".into(), json!(rep.traces.len()));
    if with_traces {
        let list: Vec<Value> = rep
            .traces
            .iter()
            .map(|t| {
                json!({
                    "t": rat(&t.trace.t),
                    "sigma": rat(&t.trace.sigma),
                    "weight": t.weight,
                    "sigma_q": t.sigma_q,
                    "term": t.term.value,
                    "term_error": t.term.error,
                })
            })
            .collect();
        r.insert("trace_terms".into(), Value::Array(list));
    }
    r
}

pub fn sigma_square(a: &SigmaSquareArgs, cfg: &RunConfig, sink: &mut Sink) -> Result<bool> {
    let set = cfg.set_of_primes()?;
    let nu = match &a.nu {
        Some(s) => parse_list("nu", s)?,
        None => vec![0; set.len()],
    };
    let sign: Sign = a.sign.parse()?;
    let mut inst = SquareTermInstance::new(a.n, nu, sign, set.clone(), cfg.weights(&set))?;
    inst.tolerance = cfg.tolerance;
    inst.cutoff = cfg.cutoff;
    let mut reports = Vec::new();
    if matches!(a.path, SquarePath::Direct | SquarePath::Both) {
        reports.push(sigma_square_direct(&inst)?);
    }
    if matches!(a.path, SquarePath::Residue | SquarePath::Both) {
        reports.push(sigma_square_residue(&inst)?);
    }
    for rep in &reports {
        sink.emit(square_record(rep, &inst, a.traces));
    }
    if let [d, r] = reports.as_slice() {
        let diff = (d.value - r.value).abs();
        let threshold = 1e-4 * (1.0 + r.value.abs());
        let pass = diff <= threshold;
        let mut rec = record("sigma-square-agreement", json!(diff), d.error + r.error, "|direct - residue|");
        rec.insert("threshold".into(), json!(threshold));
        rec.insert("pass".into(), json!(pass));
        sink.emit(rec);
        return Ok(pass);
    }
    Ok(true)
}

pub fn padic(a: &PadicArgs, cfg: &RunConfig, sink: &mut Sink) -> Result<bool> {
    let l = a.prime;
    if !crate::sarith::is_prime(l) {
        return Err(Error::NotPrime(l));
    }
    let x = parse_rational(&a.x)?;
    let digits = a.digits.unwrap_or(cfg.padic_digits);
    let mut r = record("padic", rat(&x), 0.0, "exact");
    r.insert("prime".into(), json!(l));
    r.insert("valuation".into(), json!(valuation(&x, l)));
    r.insert("frac_part".into(), rat(&frac_part(&x, l)));
    r.insert("e_ell".into(), cx(e_ell(&x, l)));
    let sqrt = if num_traits::Zero::is_zero(&x) {
        Value::Null
    } else {
        r.insert("modified_norm".into(), rat(&modified_norm(&x, l)?));
        match sqrt_padic(&x, l, digits)? {
            Some(root) => json!({
                "valuation": root.valuation(),
                "unit": root.unit().to_string(),
                "precision": root.precision(),
            }),
            None => Value::Null,
        }
    };
    r.insert("sqrt".into(), sqrt);
    if let Some(n) = &a.n {
        let n = parse_rational(n)?;
        r.insert("omega".into(), json!(omega_ell(&x, &n, l)?));
        r.insert("n".into(), rat(&n));
    }
    sink.emit(r);
    Ok(true)
}
