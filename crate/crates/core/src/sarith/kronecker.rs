//! Jacobi and Kronecker symbols.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::Q;

/// Jacobi symbol (a/n) for odd n > 0.
pub fn jacobi(a: i128, n: i128) -> i8 {
    debug_assert!(n > 0 && n % 2 == 1);
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut t = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Kronecker symbol (a/n) for arbitrary integers.
pub fn kronecker(a: i128, n: i128) -> i8 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut t = 1i8;
    let mut n = n;
    if n < 0 {
        n = -n;
        if a < 0 {
            t = -t;
        }
    }
    let twos = n.trailing_zeros();
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        n >>= twos;
        let r = a.rem_euclid(8);
        if twos % 2 == 1 && (r == 3 || r == 5) {
            t = -t;
        }
    }
    t * jacobi(a, n)
}

/// Kronecker symbol with a big numerator, reduced to machine size first.
pub fn kronecker_big(a: &BigInt, n: i128) -> i8 {
    if n == 0 {
        return if a.abs() == BigInt::from(1) { 1 } else { 0 };
    }
    let m = BigInt::from(8 * n.abs());
    let mut r = a.mod_floor(&m).to_i128().unwrap();
    if n < 0 && a.is_negative() {
        // keep the sign information that the reduction dropped
        r -= 8 * n.abs();
    }
    kronecker(r, n)
}

/// Kronecker symbol of an S-rational x = a/b at n, for n coprime to b.
///
/// Uses (a/b | n) = (ab | n), valid because b⁻¹ ≡ b modulo 8 and squares are trivial.
pub fn kronecker_rational(x: &Q, n: i128) -> i8 {
    kronecker_big(&(x.numer() * x.denom()), n)
}

/// Legendre symbol for an odd prime p.
pub fn legendre(a: i128, p: u64) -> i8 {
    jacobi(a, p as i128)
}
