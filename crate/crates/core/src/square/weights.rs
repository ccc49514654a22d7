//! Pluggable weights θ_∞^± and θ_{q_i}.

use std::fmt;
use std::sync::Arc;

use crate::padic::valuation;
use crate::sarith::RamificationSet;
use crate::Q;

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type LocalFn = Arc<dyn Fn(&Q, &Q) -> f64 + Send + Sync>;

/// θ_∞ with its declared support interval.
#[derive(Clone)]
pub struct InfWeight {
    pub support: (f64, f64),
    pub f: RealFn,
}

impl InfWeight {
    pub fn new(support: (f64, f64), f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self { support, f: Arc::new(f) }
    }

    /// Evaluates, forcing zero outside the declared support.
    pub fn eval(&self, x: f64) -> f64 {
        if x < self.support.0 || x > self.support.1 {
            0.0
        } else {
            (self.f)(x)
        }
    }
}

/// θ_{q}(T, ±nq^ν), vanishing when v_q(T) < −support.
#[derive(Clone)]
pub struct QWeight {
    pub prime: u64,
    /// The bound M with θ_q(T) = 0 whenever v_q(T) < −M.
    pub support: i64,
    pub f: LocalFn,
}

impl QWeight {
    pub fn new(prime: u64, support: i64, f: impl Fn(&Q, &Q) -> f64 + Send + Sync + 'static) -> Self {
        Self { prime, support, f: Arc::new(f) }
    }

    pub fn eval(&self, t: &Q, norm: &Q) -> f64 {
        match valuation(t, self.prime) {
            Some(v) if v < -self.support => 0.0,
            _ => (self.f)(t, norm),
        }
    }
}

/// θ_∞^+ and θ_∞^− together with one θ_{q_i} per prime of S.
#[derive(Clone)]
pub struct WeightSpec {
    pub inf_plus: InfWeight,
    pub inf_minus: InfWeight,
    pub q: Vec<QWeight>,
}

impl fmt::Debug for WeightSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightSpec")
            .field("inf_plus_support", &self.inf_plus.support)
            .field("inf_minus_support", &self.inf_minus.support)
            .field("q_support", &self.q.iter().map(|w| (w.prime, w.support)).collect::<Vec<_>>())
            .finish()
    }
}

/// exp(1 − 1/(1 − (x/2)²)) on (−2, 2), equal to 1 at 0.
pub fn bump(x: f64) -> f64 {
    let y = x / 2.0;
    if y.abs() >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - y * y)).exp()
    }
}

/// 1, 3/4, 1/2 for v_q(T) ≥ 1, = 0, = −1; zero below (support bound 1).
pub fn toy_q_weight(prime: u64) -> QWeight {
    QWeight::new(prime, 1, move |t, _| match valuation(t, prime) {
        None => 1.0,
        Some(v) if v >= 1 => 1.0,
        Some(0) => 0.75,
        Some(-1) => 0.5,
        Some(_) => 0.0,
    })
}

impl WeightSpec {
    pub fn toy(set: &RamificationSet) -> Self {
        Self {
            inf_plus: InfWeight::new((-2.0, 2.0), bump),
            inf_minus: InfWeight::new((-2.0, 2.0), bump),
            q: set.primes().iter().map(|&p| toy_q_weight(p)).collect(),
        }
    }

    /// All weights zero.
    pub fn zero(set: &RamificationSet) -> Self {
        Self {
            inf_plus: InfWeight::new((0.0, 0.0), |_| 0.0),
            inf_minus: InfWeight::new((0.0, 0.0), |_| 0.0),
            q: set.primes().iter().map(|&p| QWeight::new(p, 0, |_, _| 0.0)).collect(),
        }
    }

    /// θ_∞ scaled by c.
    pub fn scale_inf(&self, c: f64) -> Self {
        let scale = |w: &InfWeight| {
            let f = w.f.clone();
            InfWeight::new(w.support, move |x| c * f(x))
        };
        Self {
            inf_plus: scale(&self.inf_plus),
            inf_minus: scale(&self.inf_minus),
            q: self.q.clone(),
        }
    }

    pub fn q_support(&self) -> Vec<i64> {
        self.q.iter().map(|w| w.support).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bump_shape() {
        assert_eq!(bump(0.0), 1.0);
        assert_eq!(bump(2.0), 0.0);
        assert_eq!(bump(-3.0), 0.0);
        assert!(bump(1.9) > 0.0 && bump(1.9) < 1e-3);
        assert_eq!(bump(0.7), bump(-0.7));
    }

    #[test]
    fn toy_local_weights() {
        let w = toy_q_weight(2);
        let one = Q::from_integer(1.into());
        assert_eq!(w.eval(&Q::new(1.into(), 2.into()), &one), 0.5);
        assert_eq!(w.eval(&Q::new(1.into(), 4.into()), &one), 0.0);
        assert_eq!(w.eval(&Q::from_integer(6.into()), &one), 1.0);
        assert_eq!(w.eval(&Q::from_integer(3.into()), &one), 0.75);
    }
}
