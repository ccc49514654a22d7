//! Run configuration: defaults, then a flat `key = value` file, then command-line flags.

use std::path::Path;

use crate::error::{Error, Result};
use crate::sarith::RamificationSet;
use crate::special::ContourSpec;
use crate::square::{InfWeight, QWeight, WeightSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    /// One JSON object per line.
    Json,
    /// One line of `key=value` pairs per record.
    Text,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    /// The finite primes of S; must include 2.
    pub primes: Vec<u64>,
    pub padic_digits: u32,
    pub contour_height: f64,
    pub contour_step: f64,
    pub tolerance: f64,
    pub cutoff: u64,
    pub seed: u64,
    pub format: Format,
    pub threads: Option<usize>,
    /// `bump` or `zero`.
    pub theta_inf: String,
    pub theta_inf_scale: f64,
    /// `toy` or `one`.
    pub theta_q: String,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            primes: vec![2],
            padic_digits: crate::padic::DEFAULT_PRECISION,
            contour_height: ContourSpec::DEFAULT_HEIGHT,
            contour_step: ContourSpec::DEFAULT_STEP,
            tolerance: 1e-10,
            cutoff: 2_000_000,
            seed: 0,
            format: Format::Json,
            threads: None,
            theta_inf: "bump".into(),
            theta_inf_scale: 1.0,
            theta_q: "toy".into(),
        }
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Parse(format!("{key}: cannot parse {value:?}")))
}

fn positive(key: &str, x: f64) -> Result<f64> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(Error::Domain(format!("{key} must be positive, got {x}")))
    }
}

/// Parses a prime list such as `2` or `2,3`.
pub fn parse_primes(value: &str) -> Result<Vec<u64>> {
    let primes = value
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| parse_num("S", p))
        .collect::<Result<Vec<u64>>>()?;
    RamificationSet::new(&primes)?;
    Ok(primes)
}

impl RunConfig {
    /// Applies one setting; unknown keys are rejected.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key.trim() {
            "S" | "primes" => self.primes = parse_primes(value)?,
            "padic_digits" => self.padic_digits = parse_num(key, value)?,
            "contour_height" => self.contour_height = positive(key, parse_num(key, value)?)?,
            "contour_step" => self.contour_step = positive(key, parse_num(key, value)?)?,
            "tolerance" => self.tolerance = positive(key, parse_num(key, value)?)?,
            "cutoff" => self.cutoff = parse_num(key, value)?,
            "seed" => self.seed = parse_num(key, value)?,
            "format" => {
                self.format = match value {
                    "json" => Format::Json,
                    "text" => Format::Text,
                    _ => return Err(Error::Parse(format!("format must be json or text, got {value:?}"))),
                }
            }
            "threads" => self.threads = Some(parse_num(key, value)?),
            "theta_inf" => match value {
                "bump" | "zero" => self.theta_inf = value.into(),
                _ => return Err(Error::Parse(format!("theta_inf must be bump or zero, got {value:?}"))),
            },
            "theta_inf_scale" => self.theta_inf_scale = parse_num(key, value)?,
            "theta_q" => match value {
                "toy" | "one" => self.theta_q = value.into(),
                _ => return Err(Error::Parse(format!("theta_q must be toy or one, got {value:?}"))),
            },
            other => return Err(Error::Parse(format!("unknown config key {other:?}"))),
        }
        Ok(())
    }

    /// Applies a flat `key = value` file; blank lines and `#` comments are skipped.
    pub fn load(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("{}:{}: expected key = value", path.display(), i + 1)))?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn set_of_primes(&self) -> Result<RamificationSet> {
        RamificationSet::new(&self.primes)
    }

    /// The contour for V at s with the configured height and step.
    pub fn contour(&self, s: num_complex::Complex64) -> Result<ContourSpec> {
        ContourSpec::new(ContourSpec::default_for(s).sigma, self.contour_height, self.contour_step)
    }

    pub fn weights(&self, set: &RamificationSet) -> WeightSpec {
        let base = WeightSpec::toy(set);
        let inf = match self.theta_inf.as_str() {
            "zero" => {
                let z = InfWeight::new((0.0, 0.0), |_| 0.0);
                WeightSpec {
                    inf_plus: z.clone(),
                    inf_minus: z,
                    q: base.q,
                }
            }
            _ => base,
        };
        let mut w = inf.scale_inf(self.theta_inf_scale);
        if self.theta_q == "one" {
            w.q = set.primes().iter().map(|&p| QWeight::new(p, 1, |_, _| 1.0)).collect();
        }
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_file_round_trip() {
        let dir = std::env::temp_dir().join(format!("te-config-{}", std::process::id()));
        std::fs::write(&dir, "# comment\nS = 2,3\ntolerance = 1e-8\nformat=text\n\nseed = 7\n").unwrap();
        let mut c = RunConfig::default();
        c.load(&dir).unwrap();
        std::fs::remove_file(&dir).ok();
        assert_eq!(c.primes, vec![2, 3]);
        assert_eq!(c.tolerance, 1e-8);
        assert_eq!(c.format, Format::Text);
        assert_eq!(c.seed, 7);
    }

    #[test]
    fn rejects_bad_settings() {
        let mut c = RunConfig::default();
        assert_eq!(c.set("S", "3,5").unwrap_err(), Error::MissingTwo);
        assert!(c.set("tolerance", "0").is_err());
        assert!(c.set("tolerance", "-1").is_err());
        assert!(c.set("nonsense", "1").is_err());
    }
}
