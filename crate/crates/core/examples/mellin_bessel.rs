//! The cutoff F, K_s(2) at complex order, and the Mellin pair F̃(s) = K_s(2)/(sK₀(2)).

use num_complex::Complex64;
use trace_elliptic::special::{bessel_k2, f_of, mellin_f_value, ContourSpec, FTildeGrid, VKernel};
use trace_elliptic::sarith::RamificationSet;
use trace_elliptic::Result;

fn main() -> Result<()> {
    println!("{:>8} {:>22}", "x", "F(x)");
    for x in [1e-3, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0] {
        println!("{x:>8} {:>22.15e}", f_of(x)?.value);
    }
    println!();
    for s in [Complex64::new(0.5, 0.0), Complex64::new(1.0, 1.0), Complex64::new(2.0, -3.0)] {
        let k = bessel_k2(s)?;
        let m = mellin_f_value(s)?;
        let odd = m.value + mellin_f_value(-s)?.value;
        println!("s={s}: K_s(2) = {:.12}, F~(s) = {:.12}, |F~(s)+F~(-s)| = {:.1e}", k.value, m.value, odd.norm());
    }
    println!();
    let set = RamificationSet::two();
    let s = Complex64::new(0.5, 2.0);
    let kernel = VKernel::new(1, &[1], &set, s, &FTildeGrid::new(ContourSpec::default_for(s))?)?;
    for x in [0.1, 1.0, 4.0, 10.0] {
        let v = kernel.eval(x)?;
        println!("V(x={x}) = {:.10} +- {:.1e}", v.value, v.error);
    }
    Ok(())
}
