//! Measurement-scale audits.
//!
//! A transformation is probed on a grid and classified as order preserving,
//! affine or a positive rescaling; these map onto the permissible
//! transformations of ordinal, interval and ratio scales. The rank-agreement
//! search compares the orderings that different evidence statistics induce
//! on the same set of outcomes.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::evidence::{BinomialOutcome, EvidenceValue, HypothesisPair, StatisticKind};

/// Default tolerance for the affine test, relative to the value range.
pub const AFFINE_TOL: f64 = 1e-9;

/// Number of sample points used by [`unit_distortion`].
pub const DISTORTION_SAMPLES: usize = 2001;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScaleType {
    Ordinal,
    Interval,
    Ratio,
    /// Ratio-scaled magnitude with a sign giving direction.
    SignedRatio,
}

impl ScaleType {
    pub const ALL: [ScaleType; 4] =
        [ScaleType::Ordinal, ScaleType::Interval, ScaleType::Ratio, ScaleType::SignedRatio];

    pub fn name(&self) -> &'static str {
        match self {
            ScaleType::Ordinal => "ordinal",
            ScaleType::Interval => "interval",
            ScaleType::Ratio => "ratio",
            ScaleType::SignedRatio => "signed_ratio",
        }
    }

    pub fn permitted_transformations(&self) -> &'static str {
        match self {
            ScaleType::Ordinal => "rank-order preserving",
            ScaleType::Interval => "linear (positive affine)",
            ScaleType::Ratio | ScaleType::SignedRatio => "multiplication by a positive constant",
        }
    }
}

impl fmt::Display for ScaleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransformationAudit {
    pub sample_grid: Vec<f64>,
    pub order_preserving: bool,
    pub affine: bool,
    pub positive_scalar: bool,
    /// Largest over smallest first difference per unit step on the grid.
    pub unit_distortion: f64,
}

/// Probes `f` on `grid` and classifies it.
///
/// `affine` holds when every second divided difference, expressed as the
/// deviation of f(x_i) from the chord through its neighbours, is within
/// `tol` of the value range. The audit reports the strongest class that
/// applies, so a transformation only counts as affine or scalar when it is
/// also order preserving.
pub fn classify_transformation<F>(f: F, grid: &[f64], tol: f64) -> Result<TransformationAudit>
where
    F: Fn(f64) -> f64,
{
    if grid.len() < 4 {
        return Err(Error::DegenerateGrid(format!(
            "need at least 4 grid points, got {}",
            grid.len()
        )));
    }
    if grid.iter().any(|x| !x.is_finite()) || grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::DegenerateGrid("grid must be finite and strictly increasing".into()));
    }
    if !(tol >= 0.0) {
        return Err(Error::domain(format!("tolerance must be nonnegative, got {tol}")));
    }
    let values: Vec<f64> = grid.iter().map(|&x| f(x)).collect();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::DegenerateGrid("transformation is not finite on the grid".into()));
    }

    let order_preserving = values.windows(2).all(|w| w[0] < w[1]);

    let (min, max) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let range = max - min;
    let max_deviation = (1..grid.len() - 1)
        .map(|i| {
            let t = (grid[i] - grid[i - 1]) / (grid[i + 1] - grid[i - 1]);
            let chord = values[i - 1] + t * (values[i + 1] - values[i - 1]);
            (values[i] - chord).abs()
        })
        .fold(0.0, f64::max);
    let affine = order_preserving && max_deviation <= tol * range;

    let (x0, xn) = (grid[0], grid[grid.len() - 1]);
    let slope = (values[values.len() - 1] - values[0]) / (xn - x0);
    let intercept = values[0] - slope * x0;
    let magnitude = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let positive_scalar = affine && slope > 0.0 && intercept.abs() <= tol * magnitude;

    let steps: Vec<f64> = grid
        .windows(2)
        .zip(values.windows(2))
        .map(|(x, v)| (v[1] - v[0]) / (x[1] - x[0]))
        .collect();
    let unit_distortion = step_ratio(&steps);

    Ok(TransformationAudit {
        sample_grid: grid.to_vec(),
        order_preserving,
        affine,
        positive_scalar,
        unit_distortion,
    })
}

// max/min of step sizes; infinite when any step is nonpositive
fn step_ratio(steps: &[f64]) -> f64 {
    let (min, max) = steps
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    if min == max {
        1.0
    } else if min <= 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Evenly spaced grid from `lo` to `hi` inclusive.
pub fn uniform_grid(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>> {
    if !(lo < hi) || points < 2 {
        return Err(Error::DegenerateGrid(format!(
            "uniform grid needs lo < hi and at least 2 points, got [{lo}, {hi}] with {points}"
        )));
    }
    let step = (hi - lo) / (points - 1) as f64;
    let mut grid: Vec<f64> = (0..points).map(|i| lo + step * i as f64).collect();
    grid[points - 1] = hi;
    Ok(grid)
}

/// Spread of the image of one unit step across an interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitDistortion {
    /// max step / min step; infinite when a step is nonpositive.
    pub ratio: f64,
    pub max_step: f64,
    pub min_step: f64,
    /// Set when some step `f(x + unit) - f(x)` is nonpositive.
    pub non_monotone: bool,
}

/// Compares `f(x + unit) - f(x)` across `x` in `[lo, hi - unit]`.
///
/// An affine map gives a ratio of 1; anything larger means a fixed change in
/// the underlying quantity is represented by different amounts on the
/// transformed scale.
pub fn unit_distortion<F>(f: F, lo: f64, hi: f64, unit: f64) -> Result<UnitDistortion>
where
    F: Fn(f64) -> f64,
{
    if !(unit > 0.0) || !unit.is_finite() {
        return Err(Error::domain(format!("unit must be positive, got {unit}")));
    }
    if !(hi - lo >= 2.0 * unit) {
        return Err(Error::domain(format!(
            "interval [{lo}, {hi}] must span at least two units of {unit}"
        )));
    }
    let xs = uniform_grid(lo, hi - unit, DISTORTION_SAMPLES)?;
    let steps: Vec<f64> = xs.iter().map(|&x| f(x + unit) - f(x)).collect();
    if steps.iter().any(|s| !s.is_finite()) {
        return Err(Error::domain("transformation is not finite on the interval"));
    }
    let (min_step, max_step) = steps
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let non_monotone = min_step <= 0.0;
    let ratio = if non_monotone {
        f64::INFINITY
    } else if (max_step - min_step) <= 1e-12 * max_step {
        // affine maps: steps agree to rounding
        1.0
    } else {
        max_step / min_step
    };
    Ok(UnitDistortion { ratio, max_step, min_step, non_monotone })
}

/// Whether the audited transformation is admissible for `scale`.
pub fn permissible(scale: ScaleType, audit: &TransformationAudit) -> bool {
    match scale {
        ScaleType::Ordinal => audit.order_preserving,
        ScaleType::Interval => audit.affine,
        ScaleType::Ratio | ScaleType::SignedRatio => audit.positive_scalar,
    }
}

/// A named transformation for audits and the CLI.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Transform {
    Log,
    Exp,
    /// `slope * x + intercept`
    Affine { slope: f64, intercept: f64 },
    Scalar(f64),
    Power(f64),
    FahrenheitToCelsius,
}

impl Transform {
    pub fn apply(&self, x: f64) -> f64 {
        match *self {
            Transform::Log => x.ln(),
            Transform::Exp => x.exp(),
            Transform::Affine { slope, intercept } => slope * x + intercept,
            Transform::Scalar(c) => c * x,
            Transform::Power(p) => x.powf(p),
            Transform::FahrenheitToCelsius => (x - 32.0) * 5.0 / 9.0,
        }
    }
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Transform::Log => write!(f, "log"),
            Transform::Exp => write!(f, "exp"),
            Transform::Affine { slope, intercept } => write!(f, "affine:{slope},{intercept}"),
            Transform::Scalar(c) => write!(f, "scalar:{c}"),
            Transform::Power(p) => write!(f, "power:{p}"),
            Transform::FahrenheitToCelsius => write!(f, "f-to-c"),
        }
    }
}

impl FromStr for Transform {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::domain(format!("cannot parse transformation `{s}`"));
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad());
        let (head, args) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        match (head.trim(), args) {
            ("log" | "ln", None) => Ok(Transform::Log),
            ("exp", None) => Ok(Transform::Exp),
            ("f-to-c", None) => Ok(Transform::FahrenheitToCelsius),
            ("scalar", Some(a)) => Ok(Transform::Scalar(num(a)?)),
            ("power", Some(a)) => Ok(Transform::Power(num(a)?)),
            ("affine", Some(a)) => {
                let (m, c) = a.split_once(',').ok_or_else(bad)?;
                Ok(Transform::Affine { slope: num(m)?, intercept: num(c)? })
            }
            _ => Err(bad()),
        }
    }
}

/// Kendall's tau-b between two equally long samples, ties handled by the
/// usual correction. Returns NaN when either sample is constant.
pub fn kendall_tau_b(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::domain(format!("length mismatch: {} vs {}", x.len(), y.len())));
    }
    if x.len() < 2 {
        return Err(Error::domain("Kendall tau needs at least two observations"));
    }
    let (mut concordant, mut discordant) = (0i64, 0i64);
    let (mut tie_x, mut tie_y) = (0i64, 0i64);
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            match (cmp(x[i], x[j]), cmp(y[i], y[j])) {
                (Ordering::Equal, Ordering::Equal) => {}
                (Ordering::Equal, _) => tie_x += 1,
                (_, Ordering::Equal) => tie_y += 1,
                (a, b) if a == b => concordant += 1,
                _ => discordant += 1,
            }
        }
    }
    let denom =
        (((concordant + discordant + tie_x) as f64) * ((concordant + discordant + tie_y) as f64))
            .sqrt();
    if denom == 0.0 {
        return Ok(f64::NAN);
    }
    Ok((concordant - discordant) as f64 / denom)
}

fn cmp(a: f64, b: f64) -> Ordering {
    a.partial_cmp(&b).unwrap_or(Ordering::Equal)
}

/// Two outcomes ranked one way by `kind_x` and the other way by `kind_y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscordantPair {
    pub outcome_a: BinomialOutcome,
    pub outcome_b: BinomialOutcome,
    pub kind_x: StatisticKind,
    pub kind_y: StatisticKind,
    pub x_a: f64,
    pub x_b: f64,
    pub y_a: f64,
    pub y_b: f64,
}

impl DiscordantPair {
    pub fn x_ordering(&self) -> Ordering {
        cmp(self.x_a, self.x_b)
    }

    pub fn y_ordering(&self) -> Ordering {
        cmp(self.y_a, self.y_b)
    }

    /// Recomputes both statistics and checks the reversal still holds.
    pub fn revalidate(&self, hypotheses: &HypothesisPair) -> Result<bool> {
        let eval = |kind, d: &BinomialOutcome| EvidenceValue::compute(kind, d, hypotheses);
        let xa = eval(self.kind_x, &self.outcome_a)?.value;
        let xb = eval(self.kind_x, &self.outcome_b)?.value;
        let ya = eval(self.kind_y, &self.outcome_a)?.value;
        let yb = eval(self.kind_y, &self.outcome_b)?.value;
        Ok(is_reversal(cmp(xa, xb), cmp(ya, yb)))
    }
}

fn is_reversal(a: Ordering, b: Ordering) -> bool {
    a != Ordering::Equal && b != Ordering::Equal && a != b
}

#[derive(Debug, Clone, PartialEq)]
pub struct AgreementReport {
    /// Outcomes on which every statistic could be computed.
    pub dataset_grid: Vec<BinomialOutcome>,
    pub statistic_kinds: Vec<StatisticKind>,
    /// `values[s][i]`: statistic `s` on outcome `i`.
    pub values: Vec<Vec<f64>>,
    /// Symmetric tau-b matrix indexed like `statistic_kinds`.
    pub kendall_tau: Vec<Vec<f64>>,
    pub discordant_pairs: Vec<DiscordantPair>,
    /// Outcomes dropped because a statistic failed on them.
    pub excluded: Vec<(BinomialOutcome, Error)>,
}

impl AgreementReport {
    pub fn tau(&self, a: StatisticKind, b: StatisticKind) -> Option<f64> {
        let i = self.statistic_kinds.iter().position(|&k| k == a)?;
        let j = self.statistic_kinds.iter().position(|&k| k == b)?;
        Some(self.kendall_tau[i][j])
    }
}

/// All exact outcomes (n, k) with `min_n <= n <= max_n` and `0 <= k <= n`.
pub fn outcome_grid(min_n: u64, max_n: u64) -> Vec<BinomialOutcome> {
    (min_n..=max_n)
        .flat_map(|n| (0..=n).map(move |k| BinomialOutcome::exact(n, k).expect("k <= n")))
        .collect()
}

/// Evaluates every statistic on every outcome, then reports pairwise Kendall
/// tau-b and every pair of outcomes that two statistics order oppositely.
pub fn rank_order_agreement(
    grid: &[BinomialOutcome],
    kinds: &[StatisticKind],
    hypotheses: &HypothesisPair,
) -> Result<AgreementReport> {
    if grid.is_empty() {
        return Err(Error::domain("agreement search needs a nonempty grid"));
    }
    if kinds.is_empty() {
        return Err(Error::domain("agreement search needs at least one statistic"));
    }
    let evaluated: Vec<std::result::Result<Vec<f64>, Error>> = grid
        .par_iter()
        .map(|d| {
            kinds
                .iter()
                .map(|&k| EvidenceValue::compute(k, d, hypotheses).map(|v| v.value))
                .collect()
        })
        .collect();

    let mut kept = Vec::new();
    let mut rows = Vec::new();
    let mut excluded = Vec::new();
    for (d, r) in grid.iter().zip(evaluated) {
        match r {
            Ok(v) => {
                kept.push(*d);
                rows.push(v);
            }
            Err(e) => excluded.push((*d, e)),
        }
    }
    let values: Vec<Vec<f64>> =
        (0..kinds.len()).map(|s| rows.iter().map(|r| r[s]).collect()).collect();

    let m = kinds.len();
    let mut tau = vec![vec![1.0; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let t = if kept.len() < 2 { f64::NAN } else { kendall_tau_b(&values[i], &values[j])? };
            tau[i][j] = t;
            tau[j][i] = t;
        }
    }

    let mut discordant_pairs = Vec::new();
    for s in 0..m {
        for t in s + 1..m {
            if kinds[s] == kinds[t] {
                continue;
            }
            let (xs, ys) = (&values[s], &values[t]);
            for a in 0..kept.len() {
                for b in a + 1..kept.len() {
                    if is_reversal(cmp(xs[a], xs[b]), cmp(ys[a], ys[b])) {
                        discordant_pairs.push(DiscordantPair {
                            outcome_a: kept[a],
                            outcome_b: kept[b],
                            kind_x: kinds[s],
                            kind_y: kinds[t],
                            x_a: xs[a],
                            x_b: xs[b],
                            y_a: ys[a],
                            y_b: ys[b],
                        });
                    }
                }
            }
        }
    }

    Ok(AgreementReport {
        dataset_grid: kept,
        statistic_kinds: kinds.to_vec(),
        values,
        kendall_tau: tau,
        discordant_pairs,
        excluded,
    })
}

/// Successive differences of three p-values on the raw and on the −ln scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DifferenceComparison {
    pub p_values: [f64; 3],
    /// (p1 − p2, p2 − p3)
    pub raw: (f64, f64),
    /// ((−ln p2) − (−ln p1), (−ln p3) − (−ln p2))
    pub neg_log: (f64, f64),
}

impl DifferenceComparison {
    /// Second change relative to the first; NaN when the first is zero.
    pub fn raw_ratio(&self) -> f64 {
        ratio(self.raw)
    }

    pub fn neg_log_ratio(&self) -> f64 {
        ratio(self.neg_log)
    }
}

fn ratio((a, b): (f64, f64)) -> f64 {
    if a == 0.0 {
        f64::NAN
    } else {
        b / a
    }
}

pub fn difference_comparison_demo(p_values: [f64; 3]) -> Result<DifferenceComparison> {
    if p_values.iter().any(|&p| !(p > 0.0 && p <= 1.0)) {
        return Err(Error::domain(format!("p-values must lie in (0, 1], got {p_values:?}")));
    }
    let [p1, p2, p3] = p_values;
    Ok(DifferenceComparison {
        p_values,
        raw: (p1 - p2, p2 - p3),
        neg_log: ((p1 / p2).ln(), (p2 / p3).ln()),
    })
}
