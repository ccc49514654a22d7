//! Partial Zagier L-functions: convergent series, the approximate functional equation and its balance.

use num_complex::Complex64;
use trace_elliptic::sarith::{RamificationSet, SRational};
use trace_elliptic::zagier::{fe_factor, lfun_afe, lfun_series, square_laurent, LSeriesParams};
use trace_elliptic::{format_rational, Result};

fn main() -> Result<()> {
    let set = RamificationSet::two();
    let two = Complex64::new(2.0, 0.0);
    let crit = Complex64::new(0.5, 6.0);
    for d in [-3i64, -4, 5, -7, 13, -8] {
        let p = LSeriesParams::with_defaults(SRational::from_int(d, &set))?;
        let series = lfun_series(two, &p)?;
        let afe = lfun_afe(two, &p, 1.0)?;
        let a1 = lfun_afe(crit, &p, 1.0)?;
        let a3 = lfun_afe(crit, &p, 3.0)?;
        let phi = fe_factor(crit, &p.discriminant()?)?;
        println!(
            "delta={d:>3}  L(2): series {:.12} afe {:.12}  L(1/2+6i) = {:.9}{:+.9}i (A-gap {:.1e})  |phi| = {:.6}",
            series.value.re,
            afe.value.re,
            a1.value.re,
            a1.value.im,
            (a1.value - a3.value).norm(),
            phi.norm()
        );
    }
    let sq = square_laurent(&SRational::from_int(9, &set))?;
    println!(
        "delta=9: residue {} = {:.12}, finite part {:.12}",
        format_rational(&sq.residue_exact),
        sq.laurent.residue.re,
        sq.laurent.finite_part.re
    );
    Ok(())
}
