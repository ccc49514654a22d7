use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::approx::valuation;
use crate::error::{Error, Result};
use crate::sarith::kronecker_rational;
use crate::util::{prime_power_q, rational_mod};
use crate::Q;

/// |y|′_ℓ from v = v_ℓ(y) and the unit part modulo 4 (only used for ℓ = 2).
pub(crate) fn modified_norm_parts(l: u64, v: i64, unit_mod4: u64) -> Q {
    if l != 2 {
        return prime_power_q(l, -2 * v.div_euclid(2));
    }
    if v % 2 != 0 {
        prime_power_q(2, -v + 3)
    } else if unit_mod4 % 4 == 1 {
        prime_power_q(2, -v)
    } else {
        prime_power_q(2, -v + 2)
    }
}

/// The modified norm |y|′_ℓ of a nonzero rational.
pub fn modified_norm(y: &Q, l: u64) -> Result<Q> {
    let v = valuation(y, l).ok_or(Error::Zero)?;
    let unit = y / prime_power_q(l, v);
    let r = if l == 2 {
        rational_mod(&unit, 4).expect("odd unit")
    } else {
        0
    };
    Ok(modified_norm_parts(l, v, r))
}

/// ⟨x⟩_ℓ: the element of [0,1) with ℓ-power denominator and x − ⟨x⟩_ℓ ∈ Z_ℓ.
pub fn frac_part(x: &Q, l: u64) -> Q {
    let lb = BigInt::from(l);
    let mut den = x.denom().clone();
    let mut lk = BigInt::from(1);
    while (&den % &lb).is_zero() {
        den /= &lb;
        lk *= &lb;
    }
    if lk == BigInt::from(1) {
        return Q::zero();
    }
    let inv = den.extended_gcd(&lk).x;
    let c = (x.numer() * inv).mod_floor(&lk);
    Q::new(c, lk)
}

/// e(p/q) = exp(2πi·p/q), with the phase reduced modulo 1 exactly before the trig call.
pub fn unit_root(p: &BigInt, q: &BigInt) -> Complex64 {
    let r = p.mod_floor(q);
    let frac = match (r.to_f64(), q.to_f64()) {
        (Some(a), Some(b)) if b.is_finite() => a / b,
        _ => crate::util::q_to_f64(&Q::new(r, q.clone())),
    };
    let (s, c) = (2.0 * PI * frac).sin_cos();
    Complex64::new(c, s)
}

/// e(r/m) for machine-size residues.
pub fn unit_root_u64(r: u64, m: u64) -> Complex64 {
    let frac = (r % m) as f64 / m as f64;
    let (s, c) = (2.0 * PI * frac).sin_cos();
    Complex64::new(c, s)
}

/// e_ℓ(x) = e(−⟨x⟩_ℓ).
pub fn e_ell(x: &Q, l: u64) -> Complex64 {
    let f = frac_part(x, l);
    unit_root(&-f.numer(), f.denom())
}

/// ω_ℓ(y) = Kronecker symbol of (y² − 4N)·|y² − 4N|′_ℓ at ℓ.
pub fn omega_ell(y: &Q, n: &Q, l: u64) -> Result<i8> {
    let z = y * y - Q::from_integer(4.into()) * n;
    if z.is_zero() {
        return Err(Error::Domain("y² = 4N is singular".into()));
    }
    let w = &z * modified_norm(&z, l)?;
    Ok(kronecker_rational(&w, l as i128))
}

/// g_ℓ^± = Σ_{(x/ℓ) = ±1} e(x/ℓ).
pub fn gauss_sum(l: u64, sign: i8) -> Result<Complex64> {
    if l == 2 {
        return Err(Error::UnsupportedPrime(2));
    }
    if sign != 1 && sign != -1 {
        return Err(Error::Domain(format!("sign must be ±1, got {sign}")));
    }
    Ok((1..l)
        .filter(|&x| crate::sarith::legendre(x as i128, l) == sign)
        .map(|x| unit_root_u64(x, l))
        .sum())
}


#[cfg(test)]
mod properties {
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    use super::*;
    use crate::padic::valuation;
    use crate::util::strategies::{nonzero_rational, pow, prime};

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn ignores_units_near_one(y in nonzero_rational(), l in prime(), k in -1000i64..1000, d in 1i64..50) {
            // a = 1 + ℓ²k/d with d an ℓ-unit
            let d = if (d as u64).is_multiple_of(l) { d + 1 } else { d };
            let a = Q::one() + pow(l, 2) * Q::new(k.into(), d.into());
            prop_assume!(!a.is_zero());
            prop_assert_eq!(modified_norm(&(&a * &y), l).unwrap(), modified_norm(&y, l).unwrap());
        }

        #[test]
        fn sandwiched_by_plain_norm(y in nonzero_rational(), l in prime()) {
            let plain = pow(l, -valuation(&y, l).unwrap() as i32);
            let c2 = Q::from_integer(if l == 2 { 8 } else { l as i64 }.into());
            let m = modified_norm(&y, l).unwrap();
            prop_assert!(plain <= m && m <= c2 * plain);
        }

        #[test]
        fn e_ell_is_a_character(x in nonzero_rational(), y in nonzero_rational(), l in prime()) {
            let lhs = e_ell(&(&x + &y), l);
            let rhs = e_ell(&x, l) * e_ell(&y, l);
            prop_assert!((lhs - rhs).norm() < 1e-12);
            prop_assert!((e_ell(&x, l).norm() - 1.0).abs() < 1e-12);
        }
    }
}
