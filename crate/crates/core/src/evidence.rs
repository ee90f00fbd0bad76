//! Evidence statistics for binomial data.
//!
//! Point hypotheses fix θ; composite hypotheses put a Beta(a, b) prior on θ,
//! truncated to a support interval and renormalized there. Every statistic is
//! computed in log-space and the binomial coefficient is dropped wherever it
//! cancels.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numerics::{ln_beta_interval_mass, log_beta, log_binomial_coeff};

/// Exact mode requires integer counts; continuous mode treats `n` and `k` as
/// reals through the gamma-function extension of the binomial coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    Continuous,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "continuous" => Ok(Mode::Continuous),
            other => Err(Error::domain(format!("unknown mode `{other}`"))),
        }
    }
}

/// Observed binomial data: `k` successes in `n` trials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinomialOutcome {
    n: f64,
    k: f64,
    mode: Mode,
}

impl BinomialOutcome {
    pub fn new(n: f64, k: f64, mode: Mode) -> Result<Self> {
        if !(n >= 0.0) || !n.is_finite() {
            return Err(Error::domain(format!("trial count must be >= 0, got {n}")));
        }
        if !(k >= 0.0 && k <= n) {
            return Err(Error::domain(format!(
                "success count must satisfy 0 <= k <= n, got n = {n}, k = {k}"
            )));
        }
        if mode == Mode::Exact && (n.fract() != 0.0 || k.fract() != 0.0) {
            return Err(Error::domain(format!(
                "exact mode requires integer counts, got n = {n}, k = {k}"
            )));
        }
        Ok(BinomialOutcome { n, k, mode })
    }

    pub fn exact(n: u64, k: u64) -> Result<Self> {
        Self::new(n as f64, k as f64, Mode::Exact)
    }

    pub fn continuous(n: f64, k: f64) -> Result<Self> {
        Self::new(n, k, Mode::Continuous)
    }

    /// Continuous-relaxation outcome with `k = y * n`.
    pub fn from_proportion(n: f64, y: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&y) {
            return Err(Error::domain(format!("proportion must lie in [0, 1], got {y}")));
        }
        // y * n can round a hair above n when y = 1
        Self::continuous(n, (y * n).min(n))
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn failures(&self) -> f64 {
        self.n - self.k
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Observed proportion `k / n`; `None` when there are no trials.
    pub fn y(&self) -> Option<f64> {
        (self.n > 0.0).then(|| self.k / self.n)
    }
}

impl fmt::Display for BinomialOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, k={})", self.n, self.k)
    }
}

/// `x * ln(p)` with the convention `0 * ln 0 = 0`.
pub(crate) fn xlnp(x: f64, p: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * p.ln()
    }
}

/// Binomial log-likelihood without its coefficient.
pub(crate) fn log_kernel(data: &BinomialOutcome, theta: f64) -> f64 {
    xlnp(data.k, theta) + xlnp(data.failures(), 1.0 - theta)
}

/// Log-likelihood kernel at the maximum likelihood estimate θ̂ = k/n.
pub(crate) fn log_kernel_at_mle(data: &BinomialOutcome) -> f64 {
    match data.y() {
        // f/n rather than 1 - y keeps the value exactly symmetric in k and n - k
        Some(y) => xlnp(data.k, y) + xlnp(data.failures(), data.failures() / data.n),
        None => 0.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointHypothesis {
    theta: f64,
}

impl PointHypothesis {
    pub fn new(theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta < 1.0) {
            return Err(Error::domain(format!("point hypothesis requires 0 < θ < 1, got {theta}")));
        }
        Ok(PointHypothesis { theta })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaPrior {
    a: f64,
    b: f64,
}

impl BetaPrior {
    pub const UNIFORM: BetaPrior = BetaPrior { a: 1.0, b: 1.0 };

    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() {
            return Err(Error::domain(format!(
                "Beta prior requires positive finite shapes, got a = {a}, b = {b}"
            )));
        }
        Ok(BetaPrior { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }
}

/// θ restricted to `[lo, hi]` with a truncated, renormalized Beta prior.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompositeHypothesis {
    lo: f64,
    hi: f64,
    prior: BetaPrior,
    // ln B(a,b) + ln(prior mass on [lo, hi])
    ln_norm: f64,
}

impl CompositeHypothesis {
    pub fn new(lo: f64, hi: f64, prior: BetaPrior) -> Result<Self> {
        if !(0.0 <= lo && lo < hi && hi <= 1.0) {
            return Err(Error::domain(format!(
                "composite support must be a subinterval of [0, 1] with positive width, got [{lo}, {hi}]"
            )));
        }
        let ln_mass = ln_beta_interval_mass(lo, hi, prior.a, prior.b)
            .map_err(|e| Error::DegeneratePrior(e.to_string()))?;
        if !ln_mass.is_finite() {
            return Err(Error::DegeneratePrior(format!(
                "Beta({}, {}) puts no representable mass on [{lo}, {hi}]",
                prior.a, prior.b
            )));
        }
        let ln_norm = log_beta(prior.a, prior.b)? + ln_mass;
        Ok(CompositeHypothesis { lo, hi, prior, ln_norm })
    }

    pub fn uniform(lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, hi, BetaPrior::UNIFORM)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn prior(&self) -> BetaPrior {
        self.prior
    }

    /// Normalized prior density at θ (zero outside the support).
    pub fn prior_density(&self, theta: f64) -> f64 {
        if theta < self.lo || theta > self.hi {
            return 0.0;
        }
        let ln_unnorm = xlnp(self.prior.a - 1.0, theta) + xlnp(self.prior.b - 1.0, 1.0 - theta);
        (ln_unnorm - self.ln_norm).exp()
    }

    /// Prior mean of θ on the support.
    pub fn prior_mean(&self) -> Result<f64> {
        let (a, b) = (self.prior.a, self.prior.b);
        let ln_num = log_beta(a + 1.0, b)? + ln_beta_interval_mass(self.lo, self.hi, a + 1.0, b)?;
        Ok((ln_num - self.ln_norm).exp())
    }

    /// ln ∫ θ^k (1-θ)^(n-k) π(θ) dθ over the support, in closed form.
    pub fn log_marginal_kernel(&self, data: &BinomialOutcome) -> Result<f64> {
        if data.n == 0.0 {
            return Ok(0.0);
        }
        let a = data.k + self.prior.a;
        let b = data.failures() + self.prior.b;
        let ln_mass = ln_beta_interval_mass(self.lo, self.hi, a, b)?;
        if !ln_mass.is_finite() {
            return Err(Error::DegeneratePrior(format!(
                "posterior mass on [{}, {}] underflows for {data}",
                self.lo, self.hi
            )));
        }
        Ok(log_beta(a, b)? + ln_mass - self.ln_norm)
    }

    pub fn contains(&self, theta: f64) -> bool {
        self.lo <= theta && theta <= self.hi
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Hypothesis {
    Point(PointHypothesis),
    Composite(CompositeHypothesis),
}

impl Hypothesis {
    pub fn point(theta: f64) -> Result<Self> {
        PointHypothesis::new(theta).map(Hypothesis::Point)
    }

    pub fn uniform(lo: f64, hi: f64) -> Result<Self> {
        CompositeHypothesis::uniform(lo, hi).map(Hypothesis::Composite)
    }

    pub fn beta(a: f64, b: f64, lo: f64, hi: f64) -> Result<Self> {
        CompositeHypothesis::new(lo, hi, BetaPrior::new(a, b)?).map(Hypothesis::Composite)
    }

    pub fn as_point(&self) -> Option<&PointHypothesis> {
        match self {
            Hypothesis::Point(p) => Some(p),
            Hypothesis::Composite(_) => None,
        }
    }

    pub fn as_composite(&self) -> Option<&CompositeHypothesis> {
        match self {
            Hypothesis::Composite(c) => Some(c),
            Hypothesis::Point(_) => None,
        }
    }

    /// Log marginal likelihood kernel (binomial coefficient omitted).
    pub fn log_marginal_kernel(&self, data: &BinomialOutcome) -> Result<f64> {
        match self {
            Hypothesis::Point(p) => Ok(log_kernel(data, p.theta)),
            Hypothesis::Composite(c) => c.log_marginal_kernel(data),
        }
    }

    /// A single θ standing in for the hypothesis: θ itself for a point, the
    /// prior mean for a composite.
    pub fn representative_theta(&self) -> Result<f64> {
        match self {
            Hypothesis::Point(p) => Ok(p.theta),
            Hypothesis::Composite(c) => c.prior_mean(),
        }
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hypothesis::Point(p) => write!(f, "theta={}", p.theta),
            Hypothesis::Composite(c) if c.prior == BetaPrior::UNIFORM => {
                write!(f, "uniform[{},{}]", c.lo, c.hi)
            }
            Hypothesis::Composite(c) => {
                write!(f, "beta({},{})[{},{}]", c.prior.a, c.prior.b, c.lo, c.hi)
            }
        }
    }
}

/// Numerator (`h1`) and denominator (`h2`) hypotheses. Statistics that need
/// a single null read it from `h2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypothesisPair {
    pub h1: Hypothesis,
    pub h2: Hypothesis,
}

impl HypothesisPair {
    pub fn new(h1: Hypothesis, h2: Hypothesis) -> Self {
        HypothesisPair { h1, h2 }
    }

    /// Uniform prior on [0, 1] against θ = 1/2.
    pub fn fair_coin_vs_uniform() -> Self {
        HypothesisPair {
            h1: Hypothesis::Composite(CompositeHypothesis {
                lo: 0.0,
                hi: 1.0,
                prior: BetaPrior::UNIFORM,
                ln_norm: 0.0,
            }),
            h2: Hypothesis::Point(PointHypothesis { theta: 0.5 }),
        }
    }

    fn null_point(&self) -> Result<&PointHypothesis> {
        self.h2.as_point().ok_or_else(|| {
            Error::UnsupportedNull(format!("null must be a point hypothesis, got {}", self.h2))
        })
    }
}

/// Binomial log-pmf, with `0 ln 0 = 0` at the boundaries.
pub fn binomial_log_pmf(data: &BinomialOutcome, theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::domain(format!("θ must lie in (0, 1), got {theta}")));
    }
    Ok(log_binomial_coeff(data.n, data.k)? + log_kernel(data, theta))
}

/// Two-sided exact p-value P(|K - n/2| >= |k - n/2|) under Binomial(n, 1/2).
pub fn p_value_two_sided(data: &BinomialOutcome, null: &PointHypothesis) -> Result<f64> {
    if null.theta != 0.5 {
        return Err(Error::UnsupportedNull(format!(
            "two-sided p-value is only defined for θ0 = 1/2, got {}",
            null.theta
        )));
    }
    if data.mode != Mode::Exact {
        return Err(Error::domain("exact p-value requires exact mode"));
    }
    if data.n < 1.0 {
        return Err(Error::domain("exact p-value requires n >= 1"));
    }
    let n = data.n as u64;
    let k = data.k as u64;
    // compare doubled distances to stay in integers; the smallest possible
    // distance (0 for even n, 1 for odd) means every outcome is as extreme
    let observed = (2 * k).abs_diff(n);
    if observed <= n % 2 {
        return Ok(1.0);
    }
    // the two tails are disjoint mirror images, so sum the lower one
    let mut total = 0.0;
    for outcome in 0..=k.min(n - k) {
        let d = BinomialOutcome { n: data.n, k: outcome as f64, mode: Mode::Exact };
        total += binomial_log_pmf(&d, 0.5)?.exp();
    }
    Ok((2.0 * total).min(1.0))
}

/// −ln P; exactly zero when P = 1.
pub fn neg_log_p(data: &BinomialOutcome, null: &PointHypothesis) -> Result<f64> {
    let p = p_value_two_sided(data, null)?;
    if p >= 1.0 {
        Ok(0.0)
    } else {
        Ok(-p.ln())
    }
}

/// Log maximum likelihood ratio of the unrestricted MLE against a point null.
pub fn log_mlr(data: &BinomialOutcome, null: &PointHypothesis) -> Result<f64> {
    if data.n <= 0.0 {
        return Err(Error::domain("log MLR requires n > 0"));
    }
    // per-outcome relative-entropy terms, so swapping heads and tails under
    // θ0 = 1/2 swaps two addends and leaves the sum bit-identical
    let term = |count: f64, p: f64| {
        if count == 0.0 {
            0.0
        } else {
            count * (count / (data.n * p)).ln()
        }
    };
    let v = term(data.k, null.theta) + term(data.failures(), 1.0 - null.theta);
    Ok(if v > 0.0 { v } else { 0.0 })
}

/// Log simple likelihood ratio between two point hypotheses.
pub fn log_slr(data: &BinomialOutcome, h1: &PointHypothesis, h2: &PointHypothesis) -> f64 {
    xlnp(data.k, h1.theta / h2.theta) + xlnp(data.failures(), (1.0 - h1.theta) / (1.0 - h2.theta))
}

/// Log Bayes factor of a composite hypothesis against a point hypothesis.
pub fn log_bf(data: &BinomialOutcome, h1: &CompositeHypothesis, h2: &PointHypothesis) -> Result<f64> {
    if data.n == 0.0 {
        return Ok(0.0);
    }
    Ok(h1.log_marginal_kernel(data)? - log_kernel(data, h2.theta))
}

/// |log BF|.
pub fn abs_log_bf(
    data: &BinomialOutcome,
    h1: &CompositeHypothesis,
    h2: &PointHypothesis,
) -> Result<f64> {
    log_bf(data, h1, h2).map(f64::abs)
}

/// Log Bayes factor for any pair of hypotheses. Two point hypotheses have no
/// free parameters, so the result is the log simple likelihood ratio.
pub fn log_bayes_factor(data: &BinomialOutcome, h1: &Hypothesis, h2: &Hypothesis) -> Result<f64> {
    match (h1, h2) {
        (Hypothesis::Point(p1), Hypothesis::Point(p2)) => Ok(log_slr(data, p1, p2)),
        (Hypothesis::Composite(c), Hypothesis::Point(p)) => log_bf(data, c, p),
        (Hypothesis::Point(p), Hypothesis::Composite(c)) => log_bf(data, c, p).map(|v| -v),
        (Hypothesis::Composite(c1), Hypothesis::Composite(c2)) => {
            if data.n == 0.0 {
                return Ok(0.0);
            }
            Ok(c1.log_marginal_kernel(data)? - c2.log_marginal_kernel(data)?)
        }
    }
}

/// Direction a log Bayes factor points in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Support {
    H1,
    H2,
    Neither,
}

impl Support {
    pub fn of_log_bf(v: f64) -> Support {
        if v > 0.0 {
            Support::H1
        } else if v < 0.0 {
            Support::H2
        } else {
            Support::Neither
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Support::H1 => "supports_h1",
            Support::H2 => "supports_h2",
            Support::Neither => "neither",
        }
    }
}

/// Log Bayes factor contributed by `m` die rolls that carry no information
/// about θ. The die likelihood enters both marginal likelihoods as the same
/// factor, so the coin-free log Bayes factor is zero whatever `m` is.
pub fn log_bf_irrelevant_data(m: u64) -> f64 {
    let die = m as f64 * (1.0f64 / 6.0).ln();
    let no_coin = BinomialOutcome { n: 0.0, k: 0.0, mode: Mode::Exact };
    let h1 = PointHypothesis { theta: 0.25 };
    let h2 = PointHypothesis { theta: 0.75 };
    (die + log_kernel(&no_coin, h1.theta)) - (die + log_kernel(&no_coin, h2.theta))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StatisticKind {
    PValue,
    NegLogP,
    Mlr,
    LogMlr,
    Slr,
    LogSlr,
    Bf,
    LogBf,
    AbsLogBf,
}

impl StatisticKind {
    pub const ALL: [StatisticKind; 9] = [
        StatisticKind::PValue,
        StatisticKind::NegLogP,
        StatisticKind::Mlr,
        StatisticKind::LogMlr,
        StatisticKind::Slr,
        StatisticKind::LogSlr,
        StatisticKind::Bf,
        StatisticKind::LogBf,
        StatisticKind::AbsLogBf,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            StatisticKind::PValue => "pvalue",
            StatisticKind::NegLogP => "neglogp",
            StatisticKind::Mlr => "mlr",
            StatisticKind::LogMlr => "logmlr",
            StatisticKind::Slr => "slr",
            StatisticKind::LogSlr => "logslr",
            StatisticKind::Bf => "bf",
            StatisticKind::LogBf => "logbf",
            StatisticKind::AbsLogBf => "abslogbf",
        }
    }

    /// True for statistics reported on a log scale.
    pub fn is_log_valued(&self) -> bool {
        matches!(
            self,
            StatisticKind::NegLogP
                | StatisticKind::LogMlr
                | StatisticKind::LogSlr
                | StatisticKind::LogBf
                | StatisticKind::AbsLogBf
        )
    }
}

impl fmt::Display for StatisticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StatisticKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        StatisticKind::ALL
            .into_iter()
            .find(|k| k.name() == lower)
            .ok_or_else(|| Error::domain(format!("unknown statistic `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvidenceValue {
    pub kind: StatisticKind,
    pub value: f64,
    pub hypotheses: HypothesisPair,
    pub data: BinomialOutcome,
}

impl EvidenceValue {
    /// Computes one statistic for `data` under `hypotheses`.
    pub fn compute(
        kind: StatisticKind,
        data: &BinomialOutcome,
        hypotheses: &HypothesisPair,
    ) -> Result<Self> {
        let value = match kind {
            StatisticKind::PValue => p_value_two_sided(data, hypotheses.null_point()?)?,
            StatisticKind::NegLogP => neg_log_p(data, hypotheses.null_point()?)?,
            StatisticKind::Mlr => log_mlr(data, hypotheses.null_point()?)?.exp(),
            StatisticKind::LogMlr => log_mlr(data, hypotheses.null_point()?)?,
            StatisticKind::Slr | StatisticKind::LogSlr => {
                let (Some(p1), Some(p2)) = (hypotheses.h1.as_point(), hypotheses.h2.as_point())
                else {
                    return Err(Error::UnsupportedHypothesis(
                        "simple likelihood ratio needs two point hypotheses".into(),
                    ));
                };
                let v = log_slr(data, p1, p2);
                if kind == StatisticKind::Slr {
                    v.exp()
                } else {
                    v
                }
            }
            StatisticKind::Bf => log_bayes_factor(data, &hypotheses.h1, &hypotheses.h2)?.exp(),
            StatisticKind::LogBf => log_bayes_factor(data, &hypotheses.h1, &hypotheses.h2)?,
            StatisticKind::AbsLogBf => {
                log_bayes_factor(data, &hypotheses.h1, &hypotheses.h2)?.abs()
            }
        };
        Ok(EvidenceValue { kind, value, hypotheses: *hypotheses, data: *data })
    }

    /// Checks the range constraint of the statistic's kind.
    pub fn in_range(&self) -> bool {
        let v = self.value;
        match self.kind {
            StatisticKind::PValue => (0.0..=1.0).contains(&v),
            StatisticKind::Mlr => v >= 1.0,
            StatisticKind::LogMlr | StatisticKind::NegLogP | StatisticKind::AbsLogBf => v >= 0.0,
            StatisticKind::Bf | StatisticKind::Slr => v > 0.0,
            StatisticKind::LogBf | StatisticKind::LogSlr => v.is_finite(),
        }
    }
}
