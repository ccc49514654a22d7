//! Valuations, modified norms, the additive character and square roots at a few primes.

use trace_elliptic::padic::{e_ell, modified_norm, omega_ell, sqrt_padic, valuation};
use trace_elliptic::{format_rational, parse_rational, Result};

fn main() -> Result<()> {
    let n = parse_rational("2")?;
    println!("{:>8} {:>3} {:>4} {:>10} {:>18} {:>5} {:>6}", "y", "l", "v", "|y|'", "e_l(y)", "omega", "sqrt?");
    for y in ["18/5", "-7", "12", "3/8", "50/9", "1/49"] {
        let y = parse_rational(y)?;
        for l in [2u64, 3, 5, 7] {
            let e = e_ell(&y, l);
            let omega = omega_ell(&y, &n, l).map(|w| w.to_string()).unwrap_or_else(|_| "-".into());
            let root = sqrt_padic(&y, l, 16)?.is_some();
            println!(
                "{:>8} {:>3} {:>4} {:>10} {:>8.4}{:+8.4}i {:>5} {:>6}",
                format_rational(&y),
                l,
                valuation(&y, l).unwrap(),
                format_rational(&modified_norm(&y, l)?),
                e.re,
                e.im,
                omega,
                root
            );
        }
    }
    Ok(())
}
