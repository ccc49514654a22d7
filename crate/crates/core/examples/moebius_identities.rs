//! The divisor-sum identities behind the square-case Laurent coefficients.

use trace_elliptic::sarith::{lambda_divisor_sum, moebius_identity_1, moebius_identity_2};
use trace_elliptic::{format_rational, Result};

fn main() -> Result<()> {
    for n in [1u64, 12, 30, 64, 360, 2310] {
        let one = moebius_identity_1(n)?;
        let (first, second) = moebius_identity_2(n)?;
        let lam = lambda_divisor_sum(n)?;
        let terms: Vec<String> = lam
            .coeffs
            .iter()
            .map(|(p, c)| format!("{} log {p}", format_rational(c)))
            .collect();
        println!(
            "n={n:>4}: identity 1 = {}, log f sum = {:.12}, log k sum = {:.12}, Lambda sum = {} ({})",
            format_rational(&one),
            first.to_f64(),
            second.to_f64(),
            if terms.is_empty() { "0".into() } else { terms.join(" + ") },
            first == lam && second == lam.neg()
        );
    }
    let bad = (1..=10_000u64)
        .filter(|&n| {
            let (a, b) = moebius_identity_2(n).unwrap();
            a != lambda_divisor_sum(n).unwrap() || a != b.neg()
        })
        .count();
    println!("mismatches for n <= 10000: {bad}");
    Ok(())
}
