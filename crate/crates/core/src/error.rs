use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid bracket [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi} do not change sign")]
    InvalidBracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("no convergence after {iterations} iterations (last estimate {last})")]
    NonConvergence { iterations: usize, last: f64 },

    #[error("unsupported null hypothesis: {0}")]
    UnsupportedNull(String),

    #[error("unsupported hypothesis: {0}")]
    UnsupportedHypothesis(String),

    #[error("degenerate prior: {0}")]
    DegeneratePrior(String),

    #[error("degenerate hypotheses: {0}")]
    DegenerateHypotheses(String),

    #[error("log Bayes factor does not change sign on [{lo}, {hi}] at n = {n}")]
    NoSignChange { n: f64, lo: f64, hi: f64 },

    #[error("root residual {residual} exceeds {limit} at n = {n}")]
    Residual { n: f64, residual: f64, limit: f64 },

    #[error("degenerate grid: {0}")]
    DegenerateGrid(String),

    #[error("invalid sequence: {0}")]
    InvalidSequence(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
