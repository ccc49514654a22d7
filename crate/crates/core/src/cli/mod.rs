//! The `trace-elliptic` command line: one subcommand per operation plus verification suites.

mod commands;
mod config;
mod output;
mod verify;

pub use config::{parse_primes, Format, RunConfig};
pub use verify::Suite;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::error::{Error, Result};
use output::Sink;

#[derive(Parser, Debug)]
#[command(name = "trace-elliptic", version, about = "Arithmetic kernels for elliptic trace-formula terms")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Default)]
pub struct GlobalArgs {
    /// Flat `key = value` config file, applied before the flags below.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Finite primes of S, comma separated; must include 2.
    #[arg(long = "S", id = "primes", value_name = "PRIMES", global = true)]
    pub s: Option<String>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    #[arg(long, global = true)]
    pub cutoff: Option<u64>,
    /// json or text.
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Worker threads; RAYON_NUM_THREADS is honoured when unset.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generalized Kloosterman sum with its CRT factors and bound reports.
    Kl(KlArgs),
    /// Partial Zagier L-function L^S(s, δ).
    Lfun(LfunArgs),
    /// Evaluates the approximate functional equation at several A.
    AfeCheck(AfeCheckArgs),
    /// The square term Σ(□) by the direct and residue paths.
    SigmaSquare(SigmaSquareArgs),
    /// ℓ-adic valuation, modified norm, character and square root of a rational.
    Padic(PadicArgs),
    /// Runs a named verification suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct KlArgs {
    #[arg(long)]
    pub k: u64,
    #[arg(long)]
    pub f: u64,
    #[arg(long, allow_hyphen_values = true)]
    pub xi: String,
    #[arg(long, allow_hyphen_values = true)]
    pub m: String,
    /// ε in the global bound.
    #[arg(long, default_value_t = 0.01)]
    pub epsilon: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Via {
    Series,
    Afe,
}

#[derive(Args, Debug)]
pub struct LfunArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub delta: String,
    /// Complex point such as `2`, `0.5+3i` or `1-2i`.
    #[arg(long, allow_hyphen_values = true)]
    pub s: String,
    #[arg(long, value_enum, default_value_t = Via::Series)]
    pub via: Via,
    /// Balance parameter of the approximate functional equation.
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
}

#[derive(Args, Debug)]
pub struct AfeCheckArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub delta: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0.5+3i")]
    pub s: String,
    /// Comma-separated balance parameters.
    #[arg(long, default_value = "1,1.5,2,3")]
    pub a: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SquarePath {
    Direct,
    Residue,
    Both,
}

#[derive(Args, Debug)]
pub struct SigmaSquareArgs {
    #[arg(long)]
    pub n: u64,
    /// Exponents ν, one per prime of S; zero when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<String>,
    /// `+` or `-`.
    #[arg(long, allow_hyphen_values = true, default_value = "+")]
    pub sign: String,
    #[arg(long, value_enum, default_value_t = SquarePath::Both)]
    pub path: SquarePath,
    /// Include one record per trace T.
    #[arg(long)]
    pub traces: bool,
}

#[derive(Args, Debug)]
pub struct PadicArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    #[arg(long)]
    pub prime: u64,
    /// N for the character ω_ℓ(x; N).
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<String>,
    /// Digits of precision for the square root.
    #[arg(long)]
    pub digits: Option<u32>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Largest n for the moebius suite.
    #[arg(long, default_value_t = 10_000)]
    pub nmax: u64,
    /// Largest modulus for the weil suite.
    #[arg(long, default_value_t = 500)]
    pub cmax: u64,
    /// Random samples for the crt, weil and fe-involution suites.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Discriminant for the afe and fe-involution suites.
    #[arg(long, allow_hyphen_values = true, default_value = "-3")]
    pub delta: String,
    /// Comma-separated n for the sigma-square suite.
    #[arg(long, default_value = "1,3,5,15")]
    pub n: String,
}

/// Parses `a`, `bi`, `a+bi` or `a-bi`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = || Error::Parse(format!("not a complex number: {s:?}"));
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(t.parse().map_err(|_| bad())?, 0.0));
    };
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(i, c)| (c == '+' || c == '-') && !matches!(body.as_bytes()[i - 1], b'e' | b'E'))
        .map(|(i, _)| i)
        .last();
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        x => x,
    };
    Ok(Complex64::new(
        re.parse().map_err(|_| bad())?,
        im.parse().map_err(|_| bad())?,
    ))
}

fn build_config(g: &GlobalArgs) -> Result<RunConfig> {
    let mut c = RunConfig::default();
    if let Some(path) = &g.config {
        c.load(path)?;
    }
    if let Some(s) = &g.s {
        c.set("S", s)?;
    }
    if let Some(x) = g.seed {
        c.seed = x;
    }
    if let Some(x) = g.tolerance {
        c.set("tolerance", &x.to_string())?;
    }
    if let Some(x) = g.cutoff {
        c.cutoff = x;
    }
    if let Some(x) = &g.format {
        c.set("format", x)?;
    }
    if let Some(x) = g.threads {
        c.threads = Some(x);
    }
    Ok(c)
}

/// Exit status: 0 success, 1 a check failed, 2 usage or invariant error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let cfg = match build_config(&cli.global) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let mut sink = Sink::default();
    let work = |sink: &mut Sink| dispatch(&cli.command, &cfg, sink);
    let result = match cfg.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Domain(e.to_string()))
            .and_then(|pool| pool.install(|| work(&mut sink))),
        None => work(&mut sink),
    };
    if let Err(e) = sink.write(out, cfg.format) {
        let _ = writeln!(err, "error: {e}");
        return 2;
    }
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Returns whether every check passed.
fn dispatch(cmd: &Command, cfg: &RunConfig, sink: &mut Sink) -> Result<bool> {
    match cmd {
        Command::Kl(a) => commands::kl(a, cfg, sink),
        Command::Lfun(a) => commands::lfun(a, cfg, sink),
        Command::AfeCheck(a) => commands::afe_check(a, cfg, sink),
        Command::SigmaSquare(a) => commands::sigma_square(a, cfg, sink),
        Command::Padic(a) => commands::padic(a, cfg, sink),
        Command::Verify(a) => verify::run(a, cfg, sink),
    }
}
