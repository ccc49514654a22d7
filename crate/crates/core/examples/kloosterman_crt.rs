//! A generalized Kloosterman sum, its CRT factors and the bound reports.

use trace_elliptic::kloosterman::{bound_global, bound_local, crt_factorize, global_kl, KlParams};
use trace_elliptic::sarith::{RamificationSet, SRational};
use trace_elliptic::Result;

fn main() -> Result<()> {
    let set = RamificationSet::new(&[2, 3])?;
    for (k, f, xi, m) in [(35u64, 1u64, "1/2", "7"), (5, 7, "49/4", "9"), (11, 5, "3", "-25"), (1, 13, "13/8", "1")] {
        let p = KlParams::new(k, f, SRational::parse(xi, &set)?, SRational::parse(m, &set)?)?;
        let value = global_kl(&p)?;
        let crt = crt_factorize(&p)?;
        let bound = bound_global(&p, 0.01)?;
        println!(
            "k={k} f={f} xi={xi} m={m}: Kl = {:.6}{:+.6}i, product = {:.6}{:+.6}i, bound {:.3} (gate {})",
            value.re, value.im, crt.product.re, crt.product.im, bound.bound, bound.gate
        );
        for lf in &crt.factors {
            let r = bound_local(&lf.params)?;
            println!(
                "    l={} u={} v={} xi={} m={}: {:.6}{:+.6}i  {:?} bound {:.3}",
                lf.params.prime, lf.params.u, lf.params.v, lf.params.xi, lf.params.m, lf.value.re, lf.value.im, r.case, r.bound
            );
        }
    }
    Ok(())
}
