use clap::ValueEnum;

use evscale_core::{Hypothesis, Mode, PointHypothesis};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Continuous,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Continuous => Mode::Continuous,
        }
    }
}

fn number(s: &str) -> Result<f64, String> {
    s.trim().parse::<f64>().map_err(|_| format!("`{s}` is not a number"))
}

fn pair(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected two comma-separated numbers, got `{s}`"))?;
    Ok((number(a)?, number(b)?))
}

/// θ for a point hypothesis, strictly inside (0, 1).
pub fn parse_theta(s: &str) -> Result<PointHypothesis, String> {
    PointHypothesis::new(number(s)?).map_err(|e| e.to_string())
}

/// `lo,hi` pair of finite numbers.
pub fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    pair(s)
}

/// Composite prior: `uniform`, `uniform:LO,HI`, `beta:A,B` or `beta:A,B:LO,HI`.
pub fn parse_prior(s: &str) -> Result<Hypothesis, String> {
    let mut parts = s.split(':');
    let head = parts.next().unwrap_or_default().trim();
    let rest: Vec<&str> = parts.collect();
    let built = match (head, rest.as_slice()) {
        ("uniform", []) => Hypothesis::uniform(0.0, 1.0),
        ("uniform", [support]) => {
            let (lo, hi) = pair(support)?;
            Hypothesis::uniform(lo, hi)
        }
        ("beta", [shape]) => {
            let (a, b) = pair(shape)?;
            Hypothesis::beta(a, b, 0.0, 1.0)
        }
        ("beta", [shape, support]) => {
            let (a, b) = pair(shape)?;
            let (lo, hi) = pair(support)?;
            Hypothesis::beta(a, b, lo, hi)
        }
        _ => {
            return Err(format!(
                "expected uniform, uniform:LO,HI, beta:A,B or beta:A,B:LO,HI, got `{s}`"
            ))
        }
    };
    built.map_err(|e| e.to_string())
}

/// Positive finite number.
pub fn parse_positive(s: &str) -> Result<f64, String> {
    let v = number(s)?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("expected a positive number, got `{s}`"))
    }
}

/// Nonnegative finite number.
pub fn parse_nonnegative(s: &str) -> Result<f64, String> {
    let v = number(s)?;
    if v >= 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("expected a nonnegative number, got `{s}`"))
    }
}
