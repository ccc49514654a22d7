//! Partial Zagier L-functions L^S(s, δ): series, functional equation, AFE and the square case.

mod afe;
mod fe;
mod series;
mod square;

pub use afe::{lfun_afe, lfun_afe_with, AfeReport};
pub use fe::fe_factor;
pub use series::{lfun_series, lfun_series_report, SeriesReport};
pub use square::{lfun_square, residue_term, square_laurent, SquareLaurent};

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::sarith::{decompose_discriminant, divisors, kronecker, Discriminant, SRational};
use crate::Q;

/// Inputs of an L^S(s, δ) evaluation.
#[derive(Clone, Debug)]
pub struct LSeriesParams {
    pub delta: SRational,
    /// Largest k (or k·f²) enumerated before giving up on certification.
    pub cutoff: u64,
    pub tolerance: f64,
}

impl LSeriesParams {
    pub const DEFAULT_CUTOFF: u64 = 2_000_000;
    pub const DEFAULT_TOLERANCE: f64 = 1e-10;

    pub fn new(delta: SRational, cutoff: u64, tolerance: f64) -> Result<Self> {
        if delta.is_zero() {
            return Err(Error::Zero);
        }
        if cutoff == 0 {
            return Err(Error::Domain("cutoff must be positive".into()));
        }
        if !(tolerance > 0.0) {
            return Err(Error::Domain(format!("tolerance {tolerance} must be positive")));
        }
        Ok(Self { delta, cutoff, tolerance })
    }

    pub fn with_defaults(delta: SRational) -> Result<Self> {
        Self::new(delta, Self::DEFAULT_CUTOFF, Self::DEFAULT_TOLERANCE)
    }

    pub fn discriminant(&self) -> Result<Discriminant> {
        decompose_discriminant(&self.delta)
    }
}

/// One f with f² | δ in Z^S, together with the integer carrying the character (δ/f² / ·).
#[derive(Clone, Copy, Debug)]
pub(crate) struct Twist {
    pub f: u64,
    pub key: i128,
}

impl Twist {
    pub fn chi(&self, k: u64) -> i8 {
        kronecker(self.key, k as i128)
    }
}

pub(crate) fn twists(d: &Discriminant) -> Result<Vec<Twist>> {
    let sq = d.sigma_prime_to_s();
    divisors(sq)?
        .into_iter()
        .map(|f| {
            let f2 = Q::from_integer((f as i64 * f as i64).into());
            let x = d.delta.value() / f2;
            let key = (x.numer() * x.denom())
                .to_i128()
                .ok_or_else(|| Error::Overflow(format!("character of δ/{f}²")))?;
            Ok(Twist { f, key })
        })
        .collect()
}

/// |δ|′_{∞,q} as a float, from the exact rational.
pub(crate) fn norm_f64(d: &Discriminant) -> f64 {
    crate::util::q_to_f64(&d.norm_prime())
}
