//! Evidence statistics for binomial data and the measurement-scale audits
//! that go with them.
//!
//! The crate is organised bottom-up:
//!
//! * [`numerics`]: log-gamma, log-beta, the regularized incomplete beta
//!   function and a deterministic bisection root finder.
//! * [`evidence`]: p-values, maximum and simple likelihood ratios and Bayes
//!   factors against point and truncated-Beta composite hypotheses.
//! * [`trp`]: transition points (where a log Bayes factor crosses zero), how
//!   they move with the sample size, and the two routes to a zero log Bayes
//!   factor.
//! * [`scale`]: scale-type taxonomy, permissible-transformation audits,
//!   unit-distortion metrics and cross-statistic rank agreement.
//!
//! All logarithms are natural.

// `!(x > 0.0)` is used on purpose so NaN inputs fail validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod evidence;
pub mod numerics;
pub mod scale;
pub mod trp;

pub use error::{Error, Result};
pub use evidence::{
    BetaPrior, BinomialOutcome, CompositeHypothesis, EvidenceValue, Hypothesis, HypothesisPair,
    Mode, PointHypothesis, StatisticKind,
};
pub use scale::{AgreementReport, DiscordantPair, ScaleType, TransformationAudit};
pub use trp::{TrPResult, TrpSide, ZeroPathKind, ZeroPathReport};
