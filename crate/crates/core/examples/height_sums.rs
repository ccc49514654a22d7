//! Truncated height sums over Z^S against their comparators.

use trace_elliptic::sarith::{height_sum_large, height_sum_small, LargeSumMode, RamificationSet, SumCutoffs};
use trace_elliptic::Result;

fn main() -> Result<()> {
    let set = RamificationSet::two();
    let cut = SumCutoffs::default();
    println!("large sums, sum over xi != 0 of [[a xi]]^-M");
    for m in [2.0, 3.0] {
        for a in [1.0, 2.0, 4.0, 8.0] {
            let r = height_sum_large(a, m, LargeSumMode::Full, &set, 0.01, cut)?;
            let above = height_sum_large(a, m, LargeSumMode::Above(16.0), &set, 0.01, cut)?;
            println!(
                "  M={m} a={a}: {:.6e} (tail {:.1e}, ratio {:.3}); above b=16: {:.6e} (ratio {:.3})",
                r.value, r.tail_bound, r.ratio, above.value, above.ratio
            );
        }
    }
    println!("small sums, sum over [[a xi]] <= b of [[a xi]]^-alpha");
    for alpha in [0.25, 0.5] {
        for b in [4.0, 16.0, 64.0] {
            let row: Vec<String> = [1.0, 2.0, 4.0, 8.0]
                .iter()
                .map(|&a| height_sum_small(a, b, alpha, &set, cut).map(|r| format!("{:.3}", r.ratio)))
                .collect::<Result<_>>()?;
            println!("  alpha={alpha} b={b}: ratios for a=1,2,4,8: {}", row.join(" "));
        }
    }
    Ok(())
}
