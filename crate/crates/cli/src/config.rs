use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use steiner_core::{parse_rational, BigRational, Error};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Csv,
    Json,
    Svg,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Seed for random sampling, decimal or 0x-prefixed hex.
    #[arg(long, default_value = "0x5EED", value_parser = parse_seed)]
    pub seed: u64,
    /// Number of random samples.
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    /// Relative tolerance for floating-point comparisons.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Output format; each command has its own default.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file (a directory for `realize`); stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Everything needed to reproduce a run; embedded in JSON output.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub n: Option<usize>,
    pub range: Option<(usize, usize)>,
    pub seed: u64,
    pub samples: u64,
    pub tol: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub inputs: Vec<String>,
}

impl RunConfig {
    pub fn new(command: &'static str, common: &Common, default_format: Format) -> Self {
        Self {
            command,
            n: None,
            range: None,
            seed: common.seed,
            samples: common.samples,
            tol: common.tol,
            format: common.format.unwrap_or(default_format),
            out: common.out.clone(),
            inputs: Vec::new(),
        }
    }
}

/// Process outcome: exit code 1 for mathematical rejection, 2 for usage or
/// parse errors, 3 for numerical failure.
#[derive(Debug)]
pub enum Failure {
    Rejected(String),
    Usage(String),
    Numeric(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Rejected(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Numeric(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Rejected(m) | Failure::Usage(m) | Failure::Numeric(m) => f.write_str(m),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_non_convergence() {
            return Failure::Numeric(e.to_string());
        }
        match e {
            Error::Parse(_) | Error::NegativeCoefficient { .. } | Error::NonFinite { .. } => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Rejected(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

pub fn parse_seed(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid seed {s:?}: {e}"))
}

/// `a..b` or `a..=b`, both inclusive.
pub fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected a range like 3..20, got {s:?}"))?;
    let a: usize = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: usize = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok((a, b))
}

/// Complex literals such as `-1+0.5i`, `2`, `-i`, `1e-3-2i`.
pub fn parse_complex(s: &str) -> Result<Complex64, Failure> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Failure::Usage(format!("cannot parse complex number {s:?}"));
    let number = |x: &str| -> Result<f64, Failure> {
        match x {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => x.parse::<f64>().map_err(|_| bad()),
        }
    };
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return Ok(Complex64::new(number(&t)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => Ok(Complex64::new(number(&body[..k])?, number(&body[k..])?)),
        None => Ok(Complex64::new(0.0, number(body)?)),
    }
}

/// Whitespace- or comma-separated values from `file` if given, else `inline`.
pub fn read_tokens(inline: &[String], file: Option<&Path>) -> Result<Vec<String>, Failure> {
    let tokens: Vec<String> = match file {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(str::to_string)
            .collect(),
        None => inline
            .iter()
            .flat_map(|a| a.split(|c: char| c.is_whitespace() || c == ','))
            .filter(|t| !t.is_empty())
            .map(str::to_string)
            .collect(),
    };
    if tokens.is_empty() {
        return Err(Failure::Usage("no values given".into()));
    }
    Ok(tokens)
}

pub fn parse_rationals(tokens: &[String]) -> Result<Vec<BigRational>, Failure> {
    tokens
        .iter()
        .map(|t| parse_rational(t).ok_or_else(|| Failure::Usage(format!("cannot parse {t:?} as a number"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        let cases = [
            ("-1+0.5i", (-1.0, 0.5)),
            ("2", (2.0, 0.0)),
            ("-i", (0.0, -1.0)),
            ("i", (0.0, 1.0)),
            ("1e-3-2i", (1e-3, -2.0)),
            ("-0.3+1.0i", (-0.3, 1.0)),
            ("3.5i", (0.0, 3.5)),
            ("-2e+1+1e-1i", (-20.0, 0.1)),
        ];
        for (s, (re, im)) in cases {
            assert_eq!(parse_complex(s).unwrap(), Complex64::new(re, im), "{s}");
        }
        assert!(parse_complex("1+xi").is_err());
        assert!(parse_complex("").is_err());
    }

    #[test]
    fn seeds_and_ranges() {
        assert_eq!(parse_seed("0x5EED").unwrap(), 24301);
        assert_eq!(parse_seed("17").unwrap(), 17);
        assert!(parse_seed("0xZZ").is_err());
        assert_eq!(parse_range("3..20").unwrap(), (3, 20));
        assert_eq!(parse_range("21..=24").unwrap(), (21, 24));
        assert!(parse_range("5..3").is_err());
        assert!(parse_range("7").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Failure::from(Error::Parse("x".into())).code(), 2);
        assert_eq!(Failure::from(Error::SupportGap { index: 2 }).code(), 1);
        let stuck = Error::NoConvergence {
            iterations: 500,
            best: vec![],
            residuals: vec![],
        };
        assert_eq!(Failure::from(stuck).code(), 3);
    }
}
