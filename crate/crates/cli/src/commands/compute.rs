use clap::Args;

use evscale_core::{BinomialOutcome, EvidenceValue, Hypothesis, HypothesisPair, Mode, PointHypothesis, StatisticKind};

use crate::args::{parse_nonnegative, parse_prior, parse_theta};
use crate::output::{emit, Cell, Table};
use crate::{CliError, Globals};

#[derive(Debug, Args)]
pub struct ComputeArgs {
    /// Number of trials.
    #[arg(long, value_parser = parse_nonnegative)]
    n: f64,

    /// Number of successes.
    #[arg(long, value_parser = parse_nonnegative)]
    k: f64,

    /// Point null θ0 (denominator hypothesis).
    #[arg(long, value_parser = parse_theta, default_value = "0.5")]
    null: PointHypothesis,

    /// Point alternative θ1, for the simple likelihood ratio.
    #[arg(long, value_parser = parse_theta, conflicts_with = "bf")]
    alt: Option<PointHypothesis>,

    /// Composite alternative for the Bayes factor: uniform[:LO,HI] or beta:A,B[:LO,HI].
    #[arg(long, value_parser = parse_prior)]
    bf: Option<Hypothesis>,

    /// Comma-separated statistics (pvalue, neglogp, mlr, logmlr, slr, logslr, bf, logbf, abslogbf).
    #[arg(long, value_delimiter = ',')]
    kinds: Vec<String>,
}

const HEADERS: &[&str] = &["statistic", "n", "k", "y", "value", "h1", "h2"];

fn default_kinds(args: &ComputeArgs) -> Vec<StatisticKind> {
    use StatisticKind::*;
    if args.bf.is_some() {
        vec![Bf, LogBf, AbsLogBf]
    } else if args.alt.is_some() {
        vec![Slr, LogSlr]
    } else {
        vec![PValue, NegLogP, Mlr, LogMlr]
    }
}

pub fn run(args: &ComputeArgs, globals: &Globals) -> Result<(), CliError> {
    let mode: Mode = globals.mode.into();
    if mode == Mode::Exact {
        if args.n.fract() != 0.0 {
            return Err(CliError::usage("--n", "exact mode needs an integer trial count (or pass --mode continuous)"));
        }
        if args.k.fract() != 0.0 {
            return Err(CliError::usage("--k", "exact mode needs an integer success count (or pass --mode continuous)"));
        }
    }
    if args.k > args.n {
        return Err(CliError::usage("--k", format!("success count {} exceeds --n {}", args.k, args.n)));
    }
    let kinds = if args.kinds.is_empty() {
        default_kinds(args)
    } else {
        args.kinds
            .iter()
            .map(|s| s.parse::<StatisticKind>().map_err(|e| CliError::usage("--kinds", e.to_string())))
            .collect::<Result<Vec<_>, _>>()?
    };

    let data = BinomialOutcome::new(args.n, args.k, mode)?;
    let h1 = match (args.alt, args.bf) {
        (Some(p), _) => Hypothesis::Point(p),
        (None, Some(c)) => c,
        (None, None) => HypothesisPair::fair_coin_vs_uniform().h1,
    };
    let pair = HypothesisPair::new(h1, Hypothesis::Point(args.null));

    let mut table = Table::new(HEADERS);
    for kind in kinds {
        let v = EvidenceValue::compute(kind, &data, &pair)?;
        table.push(vec![
            Cell::text(kind.name()),
            Cell::Num(data.n()),
            Cell::Num(data.k()),
            data.y().map_or(Cell::Empty, Cell::Num),
            Cell::log_if(kind.is_log_valued(), v.value),
            Cell::text(pair.h1.to_string()),
            Cell::text(pair.h2.to_string()),
        ]);
    }
    emit(&table, &globals.output)?;
    Ok(())
}
