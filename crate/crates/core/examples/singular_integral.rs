//! The ℓ-adic singular integral: closed shell formula against a brute-force Riemann sum.

use num_complex::Complex64;
use trace_elliptic::padic::{j_singular, j_singular_brute, LocalSingularParams};
use trace_elliptic::{parse_rational, Result, Q};

fn main() -> Result<()> {
    let s = Complex64::new(0.5, 1.0);
    println!("{:>2} {:>3} {:>3} {:>2} {:>26} {:>9} {:>9} case", "l", "N", "w", "e", "closed form", "gap", "tail");
    for (l, n) in [(3u64, "1"), (5, "4"), (5, "-1")] {
        for eps in [-1i8, 0, 1] {
            for w in [-1i32, 0, 2] {
                let eta = Q::from_integer(2.into()) * Q::from_integer(l.into()).pow(-w);
                let p = LocalSingularParams::new(s, eta, parse_rational(n)?, l, eps, None)?;
                let d = j_singular(&p)?;
                let (brute, tail) = j_singular_brute(&p, p.cutoff + 6, 0)?;
                println!(
                    "{l:>2} {n:>3} {w:>3} {eps:>2} {:>12.3e}{:+12.3e}i {:>9.1e} {:>9.1e} {} ({} terms)",
                    d.value.re,
                    d.value.im,
                    (brute - d.value).norm(),
                    tail,
                    d.case,
                    d.terms.len()
                );
            }
        }
    }
    Ok(())
}
