//! V_{ι,ε,s}(x) = π^{s−1/2}/(2πi) ∫_{(σ)} F̃(u)·R(u)·(πx)^{−u} du, where
//! R(u) = ∏(1 − ε_i q_i^{−s+u})/(1 − ε_i q_i^{s−u−1}) · Γ((ι+1−s+u)/2)/Γ((ι+s−u)/2).

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::bessel::bessel_k2;
use super::ffun::mellin_f_with;
use super::gamma::gamma_ratio;
use super::Estimate;
use crate::error::{Error, Result};
use crate::sarith::RamificationSet;

/// A truncated vertical line σ + it, |t| ≤ height, sampled with step `step`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ContourSpec {
    pub sigma: f64,
    pub height: f64,
    pub step: f64,
}

impl ContourSpec {
    pub const DEFAULT_HEIGHT: f64 = 40.0;
    pub const DEFAULT_STEP: f64 = 0.05;

    pub fn new(sigma: f64, height: f64, step: f64) -> Result<Self> {
        if !(height > 0.0) || !(step > 0.0) || step > height {
            return Err(Error::Contour(format!("height {height} and step {step}")));
        }
        Ok(Self { sigma, height, step })
    }

    /// Abscissa max(1, 3/2 − Re s, Re s − 1/2): right of every pole and inside the strip.
    pub fn default_for(s: Complex64) -> Self {
        let sigma = 1f64.max(1.5 - s.re).max(s.re - 0.5);
        Self {
            sigma,
            height: Self::DEFAULT_HEIGHT,
            step: Self::DEFAULT_STEP,
        }
    }

    fn nodes(&self) -> usize {
        let n = (2.0 * self.height / self.step).round() as usize;
        n + n % 2
    }

    fn t(&self, j: usize) -> f64 {
        let n = self.nodes();
        -self.height + 2.0 * self.height * j as f64 / n as f64
    }

    fn h(&self) -> f64 {
        2.0 * self.height / self.nodes() as f64
    }
}

/// F̃ sampled on a contour; reusable across all V-kernels sharing the line.
#[derive(Clone, Debug)]
pub struct FTildeGrid {
    pub contour: ContourSpec,
    values: Vec<Estimate<Complex64>>,
}

impl FTildeGrid {
    pub fn new(contour: ContourSpec) -> Result<Self> {
        if contour.sigma <= 0.0 {
            return Err(Error::Contour(format!(
                "abscissa {} is not right of the pole of F̃ at 0",
                contour.sigma
            )));
        }
        let k0 = bessel_k2(Complex64::new(0.0, 0.0))?;
        let values = (0..=contour.nodes())
            .into_par_iter()
            .map(|j| {
                let u = Complex64::new(contour.sigma, contour.t(j));
                mellin_f_with(u, k0.value.re, k0.error)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { contour, values })
    }
}

/// The integrand weights of one V_{ι,ε,s}, ready to be evaluated at many x.
#[derive(Clone, Debug)]
pub struct VKernel {
    pub iota: u8,
    pub epsilon: Vec<i8>,
    pub s: Complex64,
    pub contour: ContourSpec,
    weights: Vec<Complex64>,
    weight_error: f64,
    tail: f64,
    mass: f64,
}

fn ratio_factor(iota: u8, eps: &[i8], primes: &[u64], s: Complex64, u: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let mut r = one;
    for (&e, &q) in eps.iter().zip(primes) {
        if e == 0 {
            continue;
        }
        let lq = (q as f64).ln();
        let num = one - e as f64 * ((u - s) * lq).exp();
        let den = one - e as f64 * ((s - u - 1.0) * lq).exp();
        r *= num / den;
    }
    let i = iota as f64;
    r * gamma_ratio((i + 1.0 - s + u) * 0.5, (i + s - u) * 0.5)
}

impl VKernel {
    pub fn new(iota: u8, epsilon: &[i8], set: &RamificationSet, s: Complex64, grid: &FTildeGrid) -> Result<Self> {
        if iota > 1 {
            return Err(Error::Domain(format!("ι must be 0 or 1, got {iota}")));
        }
        if epsilon.len() != set.len() {
            return Err(Error::Domain("ε must have one entry per prime of S".into()));
        }
        let c = grid.contour;
        if c.sigma + s.re <= 1.0 {
            return Err(Error::Contour(format!("σ + Re s = {} must exceed 1", c.sigma + s.re)));
        }
        if c.sigma <= s.re - 1.0 {
            return Err(Error::Contour(format!(
                "σ = {} is left of the poles on Re u = Re s − 1 = {}",
                c.sigma,
                s.re - 1.0
            )));
        }
        let n = c.nodes();
        let h = c.h();
        let pre = ((s - 0.5) * PI.ln()).exp() * (h / (2.0 * PI));
        let mut weights = Vec::with_capacity(n + 1);
        let mut weight_error = 0.0;
        let mut mass = 0.0;
        for j in 0..=n {
            let u = Complex64::new(c.sigma, c.t(j));
            let r = ratio_factor(iota, epsilon, set.primes(), s, u) * pre;
            let end = if j == 0 || j == n { 0.5 } else { 1.0 };
            let f = grid.values[j];
            let w = r * f.value * end;
            weight_error += r.norm() * f.error * end;
            mass += w.norm();
            weights.push(w);
        }
        // beyond |t| = T the integrand decays like e^{−π|t|/2}|t|^p
        let p = c.sigma.abs() + s.norm() + 1.0;
        let slope = PI / 2.0 - p / c.height;
        if slope <= 0.1 {
            return Err(Error::Contour(format!("height {} too small to certify the tail", c.height)));
        }
        let tail = (weights[0].norm() + weights[n].norm()) * 2.0 / h / slope;
        Ok(Self {
            iota,
            epsilon: epsilon.to_vec(),
            s,
            contour: c,
            weights,
            weight_error,
            tail,
            mass,
        })
    }

    /// V(x) with error = quadrature error + truncation tail + propagated F̃ error.
    pub fn eval(&self, x: f64) -> Result<Estimate<Complex64>> {
        if !(x > 0.0) {
            return Err(Error::Domain(format!("V needs x > 0, got {x}")));
        }
        let c = self.contour;
        let lx = (PI * x).ln();
        let scale = (-c.sigma * lx).exp();
        let mut all = Complex64::new(0.0, 0.0);
        let mut even = Complex64::new(0.0, 0.0);
        for (j, w) in self.weights.iter().enumerate() {
            let (sn, cs) = (-c.t(j) * lx).sin_cos();
            let term = w * Complex64::new(cs, sn);
            all += term;
            if j % 2 == 0 {
                even += term;
            }
        }
        // even-node sum is the trapezoid rule at twice the step (endpoint weights already ½)
        let coarse = even * 2.0;
        let value = all * scale;
        let error = ((all - coarse).norm() + self.tail + self.weight_error) * scale;
        Ok(Estimate { value, error })
    }

    /// Upper bound of |V(x)| from the absolute integral along the contour.
    pub fn majorant(&self, x: f64) -> f64 {
        (self.mass + self.tail + self.weight_error) * (PI * x).powf(-self.contour.sigma)
    }
}

/// One-shot V_{ι,ε,s}(x).
pub fn v_func(
    iota: u8,
    epsilon: &[i8],
    s: Complex64,
    x: f64,
    set: &RamificationSet,
    contour: ContourSpec,
) -> Result<Estimate<Complex64>> {
    let grid = FTildeGrid::new(contour)?;
    VKernel::new(iota, epsilon, set, s, &grid)?.eval(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{f_of, mellin_f_value, tanh_sinh};

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    #[test]
    fn contour_independence() {
        let set = RamificationSet::new(&[2, 3]).unwrap();
        for (iota, eps, s) in [
            (0u8, vec![1i8, 1], one()),
            (1, vec![-1, 0], one()),
            (0, vec![-1, 1], Complex64::new(0.3, 0.7)),
            (1, vec![1, -1], Complex64::new(2.0, -1.0)),
        ] {
            let a = ContourSpec::default_for(s);
            let b = ContourSpec { sigma: a.sigma + 0.7, ..a };
            let ga = FTildeGrid::new(a).unwrap();
            let gb = FTildeGrid::new(b).unwrap();
            let ka = VKernel::new(iota, &eps, &set, s, &ga).unwrap();
            let kb = VKernel::new(iota, &eps, &set, s, &gb).unwrap();
            for x in [0.05, 0.5, 1.0, 3.0, 10.0] {
                let va = ka.eval(x).unwrap();
                let vb = kb.eval(x).unwrap();
                assert!((va.value - vb.value).norm() < 1e-8, "x={x} {} vs {}", va.value, vb.value);
                assert!(va.error < 1e-8);
            }
        }
    }

    #[test]
    fn inadmissible_contours_rejected() {
        let set = RamificationSet::two();
        let c = ContourSpec::new(0.5, 40.0, 0.05).unwrap();
        let g = FTildeGrid::new(c).unwrap();
        assert!(VKernel::new(0, &[1], &set, Complex64::new(0.3, 0.0), &g).is_err());
        assert!(VKernel::new(0, &[1], &set, Complex64::new(2.0, 0.0), &g).is_err());
        assert!(FTildeGrid::new(ContourSpec { sigma: -0.5, ..c }).is_err());
    }

    #[test]
    fn rapid_decay() {
        let set = RamificationSet::two();
        let g = FTildeGrid::new(ContourSpec::default_for(one())).unwrap();
        let k = VKernel::new(0, &[1], &set, one(), &g).unwrap();
        let v10 = k.eval(10.0).unwrap().value.norm();
        let v40 = k.eval(40.0).unwrap().value.norm();
        assert!(v10 < 1e-3 && v40 < 1e-7 && v40 < v10);
    }

    #[test]
    fn mellin_transform_matches_closed_form() {
        // ∫_0^∞ x^{s0−1}V(x)dx = π^{1/2−s0}F̃(s0)R(s0) at s = 1
        let set = RamificationSet::new(&[2, 3]).unwrap();
        let s = one();
        let g = FTildeGrid::new(ContourSpec::default_for(s)).unwrap();
        for (iota, eps) in [(0u8, vec![1i8, -1]), (1, vec![-1, 0])] {
            let k = VKernel::new(iota, &eps, &set, s, &g).unwrap();
            for s0 in [1.3, 2.2, 3.0] {
                let integrand = |w: f64| {
                    let x = w.exp();
                    k.eval(x).unwrap().value * x.powf(s0)
                };
                let num = tanh_sinh(integrand, -25.0, 7.0, 1e-11).unwrap().value;
                let u = Complex64::new(s0, 0.0);
                let closed = mellin_f_value(u).unwrap().value
                    * ratio_factor(iota, &eps, set.primes(), s, u)
                    * ((0.5 - s0) * PI.ln()).exp();
                assert!((num - closed).norm() < 1e-9, "ι={iota} s0={s0}: {num} vs {closed}");
            }
        }
    }

    #[test]
    fn f_is_inverse_mellin_of_f_tilde() {
        // sanity check of the grid against F itself: (1/2πi)∫ F̃(u) x^{−u} du = F(x)
        let c = ContourSpec::new(1.0, 40.0, 0.05).unwrap();
        let g = FTildeGrid::new(c).unwrap();
        for x in [0.3f64, 1.0, 2.5] {
            let mut acc = Complex64::new(0.0, 0.0);
            let n = c.nodes();
            for j in 0..=n {
                let u = Complex64::new(c.sigma, c.t(j));
                let end = if j == 0 || j == n { 0.5 } else { 1.0 };
                acc += g.values[j].value * (-u * x.ln()).exp() * end;
            }
            acc *= c.h() / (2.0 * PI);
            assert!((acc.re - f_of(x).unwrap().value).abs() < 1e-10 && acc.im.abs() < 1e-10);
        }
    }
}
