//! Transition points and the two routes to a zero log Bayes factor.
//!
//! A transition point (TrP) is the observed proportion y at which the log
//! Bayes factor of `h1` against `h2` is zero. For two point hypotheses it is
//! a closed form that does not depend on n; against a composite alternative
//! it has to be located numerically and drifts with n.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::evidence::{
    log_bayes_factor, log_bf, log_kernel, log_kernel_at_mle, log_slr, BinomialOutcome,
    CompositeHypothesis, Hypothesis, PointHypothesis,
};
use crate::numerics::{bisect, RootBracket};

/// Largest |log BF| accepted at a reported transition point.
pub const MAX_RESIDUAL: f64 = 1e-8;

/// Offset kept between a TrP search bracket and the support edges / θ0.
pub const BRACKET_MARGIN: f64 = 1e-6;

pub const DEFAULT_TOL: f64 = 1e-13;

/// Which side of the point hypothesis a TrP lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrpSide {
    Below,
    Above,
}

impl TrpSide {
    pub fn label(&self) -> &'static str {
        match self {
            TrpSide::Below => "below",
            TrpSide::Above => "above",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrPResult {
    pub n: f64,
    pub trp_y: f64,
    /// |log BF| at `trp_y`.
    pub residual: f64,
    pub bracket_width: f64,
    pub side: TrpSide,
}

/// Closed-form TrP of the log simple likelihood ratio of θ1 against θ2.
pub fn trp_simple(theta1: f64, theta2: f64) -> Result<f64> {
    let h1 = PointHypothesis::new(theta1)?;
    let h2 = PointHypothesis::new(theta2)?;
    if h1 == h2 {
        return Err(Error::DegenerateHypotheses(format!(
            "transition point needs distinct hypotheses, both are θ = {theta1}"
        )));
    }
    let failure_term = ((1.0 - theta2) / (1.0 - theta1)).ln();
    Ok(failure_term / ((theta1 / theta2).ln() + failure_term))
}

fn log_bf_at(n: f64, y: f64, h1: &CompositeHypothesis, h2: &PointHypothesis) -> f64 {
    BinomialOutcome::from_proportion(n, y).and_then(|d| log_bf(&d, h1, h2)).unwrap_or(f64::NAN)
}

/// Locates the TrP inside an explicit `[lo, hi]` bracket on y.
pub fn trp_in_bracket(
    n: f64,
    h1: &CompositeHypothesis,
    h2: &PointHypothesis,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<TrPResult> {
    if !(n > 0.0) || !n.is_finite() {
        return Err(Error::domain(format!("transition point requires n > 0, got {n}")));
    }
    let bracket = RootBracket::with_tol(lo, hi, tol)?;
    let f = |y: f64| log_bf_at(n, y, h1, h2);
    let root = match bisect(f, &bracket) {
        Ok(r) => r,
        Err(Error::InvalidBracket { lo, hi, .. }) => return Err(Error::NoSignChange { n, lo, hi }),
        Err(e) => return Err(e),
    };
    let residual = log_bf_at(n, root.x, h1, h2).abs();
    if !(residual <= MAX_RESIDUAL) {
        return Err(Error::Residual { n, residual, limit: MAX_RESIDUAL });
    }
    let side = if root.x < h2.theta() { TrpSide::Below } else { TrpSide::Above };
    Ok(TrPResult { n, trp_y: root.x, residual, bracket_width: root.width, side })
}

fn side_bracket(h1: &CompositeHypothesis, h2: &PointHypothesis, side: TrpSide) -> Result<(f64, f64)> {
    let theta0 = h2.theta();
    let (lo, hi) = match side {
        TrpSide::Below => (h1.lo() + BRACKET_MARGIN, theta0.min(h1.hi()) - BRACKET_MARGIN),
        TrpSide::Above => (theta0.max(h1.lo()) + BRACKET_MARGIN, h1.hi() - BRACKET_MARGIN),
    };
    if !(lo < hi) {
        return Err(Error::domain(format!(
            "no room for a {} transition point between support [{}, {}] and θ0 = {theta0}",
            side.label(),
            h1.lo(),
            h1.hi()
        )));
    }
    Ok((lo, hi))
}

/// TrP for a composite alternative supported on one side of θ0.
pub fn trp_composite(
    n: f64,
    h1: &CompositeHypothesis,
    h2: &PointHypothesis,
    tol: f64,
) -> Result<TrPResult> {
    let theta0 = h2.theta();
    let side = if h1.hi() <= theta0 {
        TrpSide::Below
    } else if h1.lo() >= theta0 {
        TrpSide::Above
    } else {
        return Err(Error::UnsupportedHypothesis(format!(
            "support [{}, {}] straddles θ0 = {theta0}; use trp_two_sided",
            h1.lo(),
            h1.hi()
        )));
    };
    let (lo, hi) = side_bracket(h1, h2, side)?;
    trp_in_bracket(n, h1, h2, lo, hi, tol)
}

/// The pair of TrPs (below and above θ0) for a support that contains θ0.
pub fn trp_two_sided(
    n: f64,
    h1: &CompositeHypothesis,
    h2: &PointHypothesis,
    tol: f64,
) -> Result<(TrPResult, TrPResult)> {
    if !(h1.lo() < h2.theta() && h2.theta() < h1.hi()) {
        return Err(Error::UnsupportedHypothesis(format!(
            "two-sided search needs θ0 = {} strictly inside [{}, {}]",
            h2.theta(),
            h1.lo(),
            h1.hi()
        )));
    }
    let (lo, hi) = side_bracket(h1, h2, TrpSide::Below)?;
    let below = trp_in_bracket(n, h1, h2, lo, hi, tol)?;
    let (lo, hi) = side_bracket(h1, h2, TrpSide::Above)?;
    let above = trp_in_bracket(n, h1, h2, lo, hi, tol)?;
    Ok((below, above))
}

/// One sweep entry; failures are kept in place rather than aborting.
#[derive(Debug, Clone, PartialEq)]
pub struct TrpEntry {
    pub n: f64,
    pub result: Result<TrPResult>,
}

/// [`trp_composite`] over a strictly increasing list of trial counts.
pub fn trp_curve(
    n_values: &[f64],
    h1: &CompositeHypothesis,
    h2: &PointHypothesis,
    tol: f64,
) -> Result<Vec<TrpEntry>> {
    if n_values.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidSequence("n values must be strictly increasing".into()));
    }
    Ok(n_values
        .par_iter()
        .map(|&n| TrpEntry { n, result: trp_composite(n, h1, h2, tol) })
        .collect())
}

/// Smaller of the two log-likelihood ratios of the MLE against θ1 and
/// against θ2. Zero when the data sit on either hypothesis; at a fixed
/// proportion it grows linearly in n.
pub fn against_both(data: &BinomialOutcome, theta1: f64, theta2: f64) -> Result<f64> {
    if !(data.n() > 0.0) {
        return Err(Error::domain("against_both requires n > 0"));
    }
    let h1 = PointHypothesis::new(theta1)?;
    let h2 = PointHypothesis::new(theta2)?;
    if h1 == h2 {
        return Err(Error::DegenerateHypotheses(format!("both hypotheses are θ = {theta1}")));
    }
    let best = log_kernel_at_mle(data);
    let v = (best - log_kernel(data, h1.theta())).min(best - log_kernel(data, h2.theta()));
    Ok(if v > 0.0 { v } else { 0.0 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroPathKind {
    /// Fixed proportion, n shrinking toward zero.
    ShrinkN,
    /// y pinned to the TrP while n grows.
    RideTrP,
}

impl ZeroPathKind {
    pub fn label(&self) -> &'static str {
        match self {
            ZeroPathKind::ShrinkN => "shrink-n",
            ZeroPathKind::RideTrP => "ride-trp",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroPathConfig {
    pub h1: Hypothesis,
    pub h2: PointHypothesis,
    pub n_values: Vec<f64>,
    /// Fixed proportion for [`ZeroPathKind::ShrinkN`]; ignored when riding the TrP.
    pub y: f64,
    pub tol: f64,
}

/// `count` points spaced geometrically from `start` to `end` inclusive.
pub fn geometric_grid(start: f64, end: f64, count: usize) -> Result<Vec<f64>> {
    if !(start > 0.0 && end > 0.0) || count == 0 {
        return Err(Error::domain("geometric grid needs positive endpoints and count >= 1"));
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    let ratio = (end / start).ln() / (count - 1) as f64;
    let mut grid: Vec<f64> = (0..count).map(|i| start * (ratio * i as f64).exp()).collect();
    grid[count - 1] = end;
    Ok(grid)
}

impl ZeroPathConfig {
    /// y = 0.9 with n shrinking geometrically from 8 to 0.1, against the
    /// mirror-image one-sided setup (uniform θ > 1/2 vs θ = 1/2) so that the
    /// fixed proportion sits on the composite hypothesis' side.
    pub fn shrink_n_default() -> Self {
        ZeroPathConfig {
            h1: Hypothesis::uniform(0.5, 1.0).expect("valid support"),
            h2: PointHypothesis::new(0.5).expect("valid θ"),
            n_values: geometric_grid(8.0, 0.1, 12).expect("valid grid"),
            y: 0.9,
            tol: DEFAULT_TOL,
        }
    }

    /// One-sided uniform θ < 1/2 vs θ = 1/2 at n = 10, 100, 1000.
    pub fn ride_trp_default() -> Self {
        ZeroPathConfig {
            h1: Hypothesis::uniform(0.0, 0.5).expect("valid support"),
            h2: PointHypothesis::new(0.5).expect("valid θ"),
            n_values: vec![10.0, 100.0, 1000.0],
            y: f64::NAN,
            tol: DEFAULT_TOL,
        }
    }

    pub fn default_for(kind: ZeroPathKind) -> Self {
        match kind {
            ZeroPathKind::ShrinkN => Self::shrink_n_default(),
            ZeroPathKind::RideTrP => Self::ride_trp_default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroPathRow {
    pub n: f64,
    pub y: f64,
    pub log_bf: f64,
    pub against_both: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroPathEndpoint {
    pub final_log_bf: f64,
    pub final_against_both: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroPathReport {
    pub path_kind: ZeroPathKind,
    pub trace: Vec<ZeroPathRow>,
    pub endpoint_summary: ZeroPathEndpoint,
}

fn trp_for(n: f64, h1: &Hypothesis, h2: &PointHypothesis, tol: f64) -> Result<f64> {
    match h1 {
        Hypothesis::Point(p) => trp_simple(p.theta(), h2.theta()),
        Hypothesis::Composite(c) => trp_composite(n, c, h2, tol).map(|r| r.trp_y),
    }
}

/// Traces the log Bayes factor and the against-both proxy along one of the
/// two routes to log BF = 0.
///
/// The proxy compares the MLE with a representative θ for each hypothesis
/// (the prior mean for a composite).
pub fn zero_path(kind: ZeroPathKind, config: &ZeroPathConfig) -> Result<ZeroPathReport> {
    let ns = &config.n_values;
    if ns.is_empty() {
        return Err(Error::InvalidSequence("zero path needs at least one n".into()));
    }
    match kind {
        ZeroPathKind::ShrinkN => {
            if ns.windows(2).any(|w| !(w[0] > w[1])) || ns.iter().any(|&n| !(n >= 0.0)) {
                return Err(Error::InvalidSequence(
                    "shrink-n path needs a strictly decreasing sequence of n >= 0".into(),
                ));
            }
            if !(config.y > 0.0 && config.y < 1.0) {
                return Err(Error::domain(format!("fixed y must lie in (0, 1), got {}", config.y)));
            }
        }
        ZeroPathKind::RideTrP => {
            if ns.windows(2).any(|w| !(w[0] < w[1])) || ns.iter().any(|&n| !(n > 0.0)) {
                return Err(Error::InvalidSequence(
                    "ride-trp path needs a strictly increasing sequence of n > 0".into(),
                ));
            }
        }
    }
    let h2 = Hypothesis::Point(config.h2);
    let theta1 = config.h1.representative_theta()?;
    let theta2 = config.h2.theta();

    let trace = ns
        .par_iter()
        .map(|&n| {
            let y = match kind {
                ZeroPathKind::ShrinkN => config.y,
                ZeroPathKind::RideTrP => trp_for(n, &config.h1, &config.h2, config.tol)?,
            };
            let data = BinomialOutcome::from_proportion(n, y)?;
            let log_bf = log_bayes_factor(&data, &config.h1, &h2)?;
            let against = if n == 0.0 { 0.0 } else { against_both(&data, theta1, theta2)? };
            if kind == ZeroPathKind::RideTrP && !(log_bf.abs() <= MAX_RESIDUAL) {
                return Err(Error::Residual { n, residual: log_bf.abs(), limit: MAX_RESIDUAL });
            }
            Ok(ZeroPathRow { n, y, log_bf, against_both: against })
        })
        .collect::<Result<Vec<_>>>()?;

    let last = trace[trace.len() - 1];
    Ok(ZeroPathReport {
        path_kind: kind,
        trace,
        endpoint_summary: ZeroPathEndpoint {
            final_log_bf: last.log_bf,
            final_against_both: last.against_both,
        },
    })
}

/// log SLR evaluated at proportion `y` over `n` trials.
pub fn log_slr_at(n: f64, y: f64, theta1: f64, theta2: f64) -> Result<f64> {
    let d = BinomialOutcome::from_proportion(n, y)?;
    Ok(log_slr(&d, &PointHypothesis::new(theta1)?, &PointHypothesis::new(theta2)?))
}
