//! The square term Σ(□) by the defining double sum and by the residue identity.

use std::time::Instant;

use trace_elliptic::sarith::RamificationSet;
use trace_elliptic::square::{sigma_square_direct, sigma_square_residue, Sign, SquareTermInstance};
use trace_elliptic::{format_rational, Result};

fn main() -> Result<()> {
    let set = RamificationSet::two();
    println!("{:>3} {:>4} {:>6} {:>16} {:>16} {:>9} {:>7}", "n", "sign", "traces", "direct", "residue", "gap", "ms");
    for n in [1u64, 3, 5, 15, 21] {
        for sign in [Sign::Plus, Sign::Minus] {
            let inst = SquareTermInstance::toy(n, sign, &set)?;
            let start = Instant::now();
            let d = sigma_square_direct(&inst)?;
            let r = sigma_square_residue(&inst)?;
            println!(
                "{n:>3} {:>4} {:>6} {:>16.12} {:>16.12} {:>9.1e} {:>7}",
                if sign == Sign::Plus { "+" } else { "-" },
                d.traces.len(),
                d.value,
                r.value,
                (d.value - r.value).abs(),
                start.elapsed().as_millis()
            );
        }
    }
    let inst = SquareTermInstance::toy(15, Sign::Minus, &set)?;
    println!("\ntraces for n=15, sign -:");
    for t in sigma_square_residue(&inst)?.traces {
        println!(
            "  T={:>6} sigma={:>5} weight={:.6} sigma_q={} term={:.9}",
            format_rational(&t.trace.t),
            format_rational(&t.trace.sigma),
            t.weight,
            t.sigma_q,
            t.term.value
        );
    }
    Ok(())
}
