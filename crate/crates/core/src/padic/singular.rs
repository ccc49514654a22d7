//! The singular Fourier integral 𝔍(s,η) over {ω_ℓ(y) = ε, |y − 2√N|_ℓ ≤ ℓ^{−L}}.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::approx::{sqrt_padic, valuation, PadicApprox, DEFAULT_PRECISION};
use super::integrate::{padic_integrate_checked, Region};
use super::norm::{e_ell, gauss_sum, modified_norm, omega_ell, unit_root};
use crate::error::{Error, Result};
use crate::sarith::legendre;
use crate::Q;

/// Parameters of 𝔍(s,η) at an odd prime ℓ.
#[derive(Clone, Debug)]
pub struct LocalSingularParams {
    pub s: Complex64,
    pub eta: Q,
    pub n: Q,
    pub prime: u64,
    pub cutoff: i64,
    pub epsilon: i8,
    nu: i64,
    root: PadicApprox,
}

/// Smallest L ≥ ν + 4 with L ≢ ν (ε = 0) or L ≡ ν (ε = ±1) modulo 2.
pub fn admissible_cutoff(nu: i64, epsilon: i8) -> i64 {
    let l = nu + 4;
    if parity_ok(l, nu, epsilon) {
        l
    } else {
        l + 1
    }
}

fn parity_ok(l: i64, nu: i64, epsilon: i8) -> bool {
    let same = (l - nu).rem_euclid(2) == 0;
    if epsilon == 0 {
        !same
    } else {
        same
    }
}

impl LocalSingularParams {
    /// Validates the parameters; `cutoff = None` picks the smallest admissible L.
    pub fn new(s: Complex64, eta: Q, n: Q, prime: u64, epsilon: i8, cutoff: Option<i64>) -> Result<Self> {
        if prime == 2 {
            return Err(Error::UnsupportedPrime(2));
        }
        if !crate::sarith::is_prime(prime) {
            return Err(Error::NotPrime(prime));
        }
        if !(-1..=1).contains(&epsilon) {
            return Err(Error::Domain(format!("ε must lie in {{−1,0,1}}, got {epsilon}")));
        }
        if s.re <= -2.0 {
            return Err(Error::Domain(format!("Re s = {} must exceed −2", s.re)));
        }
        let root = sqrt_padic(&n, prime, DEFAULT_PRECISION)?
            .ok_or_else(|| Error::NotSquare(format!("{n} in Q_{prime}")))?;
        let nu = root.valuation().expect("nonzero root");
        let cutoff = match cutoff {
            None => admissible_cutoff(nu, epsilon),
            Some(l) => {
                if l < nu + 4 {
                    return Err(Error::Parity {
                        case: "cutoff-too-small",
                        detail: format!("L = {l} < ν + 4 = {}", nu + 4),
                    });
                }
                if !parity_ok(l, nu, epsilon) {
                    return Err(Error::Parity {
                        case: if epsilon == 0 { "eps0-needs-L-not-nu" } else { "eps1-needs-L-eq-nu" },
                        detail: format!("L = {l}, ν = {nu}, ε = {epsilon}"),
                    });
                }
                l
            }
        };
        Ok(Self {
            s,
            eta,
            n,
            prime,
            cutoff,
            epsilon,
            nu,
            root,
        })
    }

    /// ν with 2ν = v_ℓ(N).
    pub fn nu(&self) -> i64 {
        self.nu
    }

    /// The chosen square root of N; the integration region is centered at twice it.
    pub fn root(&self) -> &PadicApprox {
        &self.root
    }

    /// w = −v_ℓ(η), `None` for η = 0.
    pub fn w(&self) -> Option<i64> {
        valuation(&self.eta, self.prime).map(|v| -v)
    }

    /// 2√N as a rational approximation (accurate to the working precision).
    pub fn center(&self) -> Q {
        self.root.to_rational() * Q::from_integer(2.into())
    }
}

/// One summand A·(1 − ℓ^{−2−s})^{−1}·B^{s/2} (geometric) or A·B^{s/2}, with B = ℓ^{log_base}.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularTerm {
    pub coefficient: Complex64,
    pub log_base: i64,
    pub geometric: bool,
}

impl SingularTerm {
    pub fn eval(&self, prime: u64, s: Complex64) -> Complex64 {
        let lnl = (prime as f64).ln();
        let b = (s * 0.5 * self.log_base as f64 * lnl).exp();
        let mut v = self.coefficient * b;
        if self.geometric {
            v /= Complex64::new(1.0, 0.0) - (-(s + 2.0) * lnl).exp();
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularDecomposition {
    pub value: Complex64,
    pub terms: Vec<SingularTerm>,
    pub cutoff: i64,
    pub nu: i64,
    pub w: Option<i64>,
    pub case: String,
    /// |𝔍|·(1 + |η|_ℓ)^{1+σ/2}
    pub bound_constant: f64,
}

/// e_ℓ of an ℓ-adic approximation; needs precision covering the polar part.
pub fn e_ell_approx(z: &PadicApprox) -> Result<Complex64> {
    match z.valuation() {
        Some(v) if v < 0 => {
            let k = (-v) as u32;
            if k > z.precision() {
                return Err(Error::Domain("precision too small for the polar part".into()));
            }
            let m = BigInt::from(z.prime()).pow(k);
            let r = z.unit().mod_floor(&m);
            Ok(unit_root(&-r, &m))
        }
        _ => Ok(Complex64::new(1.0, 0.0)),
    }
}

/// 𝔍(s,η) by summing the shell integrals in closed form.
pub fn j_singular(p: &LocalSingularParams) -> Result<SingularDecomposition> {
    let l = p.prime;
    let lf = l as f64;
    let nu = p.nu;
    let cut = p.cutoff;
    let w = p.w();
    let phase = match w {
        None => Complex64::new(1.0, 0.0),
        Some(_) => {
            let two_eta = &p.eta * Q::from_integer((-2).into());
            e_ell_approx(&p.root.mul_rational(&two_eta))?
        }
    };
    // first shell exponent at or beyond max(L, w) with the right parity
    let want_same = p.epsilon != 0;
    let start = w.map_or(cut, |w| w.max(cut));
    let u1 = if ((start - nu).rem_euclid(2) == 0) == want_same { start } else { start + 1 };
    let mut terms = Vec::new();
    let pow = |e: i64| lf.powi(e as i32);
    let boundary = w.map(|w| w - 1).filter(|&u| u >= cut);
    if p.epsilon == 0 {
        terms.push(SingularTerm {
            coefficient: phase * (1.0 - 1.0 / lf) * pow(-u1),
            log_base: 1 - nu - u1,
            geometric: true,
        });
        if let Some(u) = boundary.filter(|&u| (u - nu).rem_euclid(2) == 1) {
            terms.push(SingularTerm {
                coefficient: -phase * pow(-(u + 1)),
                log_base: 1 - nu - u,
                geometric: false,
            });
        }
    } else {
        terms.push(SingularTerm {
            coefficient: phase * 0.5 * (1.0 - 1.0 / lf) * pow(-u1),
            log_base: -nu - u1,
            geometric: true,
        });
        if let Some(u) = boundary.filter(|&u| (u - nu).rem_euclid(2) == 0) {
            let n0 = p.root.unit_mod(1).to_i64().unwrap() as i128;
            let eta0 = {
                let v = valuation(&p.eta, l).unwrap();
                let unit = &p.eta / crate::util::prime_power_q(l, v);
                crate::util::rational_mod(&unit, l).unwrap() as i128
            };
            let sign = p.epsilon * legendre(n0 * eta0, l);
            let g = gauss_sum(l, sign)?;
            terms.push(SingularTerm {
                coefficient: phase * g * pow(-(u + 1)),
                log_base: -nu - u,
                geometric: false,
            });
        }
    }
    let value = terms.iter().map(|t| t.eval(l, p.s)).sum::<Complex64>();
    let eta_norm = w.map_or(0.0, pow);
    let bound_constant = value.norm() * (1.0 + eta_norm).powf(1.0 + p.s.re / 2.0);
    let case = format!(
        "odd-prime/eps{}/{}",
        p.epsilon,
        match w {
            Some(w) if w > cut => "w>L",
            _ => "w<=L",
        }
    );
    Ok(SingularDecomposition {
        value,
        terms,
        cutoff: cut,
        nu,
        w,
        case,
        bound_constant,
    })
}

/// Bound for the shells u ≥ D left out of a brute-force evaluation.
pub fn singular_tail_bound(p: &LocalSingularParams, depth_limit: i64) -> f64 {
    let lf = p.prime as f64;
    let sigma = p.s.re;
    let ratio = lf.powf(-1.0 - sigma / 2.0);
    let shell = |u: i64| {
        let a = lf.powf(-((u + p.nu) as f64) * sigma / 2.0);
        let b = lf.powf(-((u + p.nu - 1) as f64) * sigma / 2.0);
        lf.powi(-(u as i32)) * (1.0 - 1.0 / lf) * a.max(b)
    };
    shell(depth_limit) / (1.0 - ratio)
}

/// 𝔍(s,η) by Riemann sums over the shells L ≤ u < D around 2√N; returns (value, tail bound).
pub fn j_singular_brute(p: &LocalSingularParams, depth_limit: i64, extra: i64) -> Result<(Complex64, f64)> {
    let l = p.prime;
    let center = p.center();
    let w = p.w().unwrap_or(i64::MIN);
    let regions: Vec<Region> = (p.cutoff..depth_limit)
        .map(|u| Region::shell(center.clone(), u, (u + 2).max(w) + extra))
        .collect();
    let four_n = Q::from_integer(4.into()) * &p.n;
    let lnl = (l as f64).ln();
    let integrand = |y: &Q| {
        let z = y * y - &four_n;
        if z.is_zero() || omega_ell(y, &p.n, l).ok() != Some(p.epsilon) {
            return Complex64::new(0.0, 0.0);
        }
        let norm = modified_norm(&z, l).expect("nonzero");
        let k = valuation(&norm, l).unwrap() as f64;
        (p.s * 0.5 * k * lnl).exp() * e_ell(&-(y * &p.eta), l)
    };
    let value = padic_integrate_checked(l, &regions, 1e-12, integrand)?;
    Ok((value, singular_tail_bound(p, depth_limit)))
}
