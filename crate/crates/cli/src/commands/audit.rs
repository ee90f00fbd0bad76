use clap::{Args, Subcommand};

use evscale_core::scale::{
    classify_transformation, difference_comparison_demo, outcome_grid, permissible, rank_order_agreement,
    unit_distortion, Transform, AFFINE_TOL,
};
use evscale_core::{Hypothesis, HypothesisPair, PointHypothesis, ScaleType, StatisticKind};

use crate::args::{parse_pair, parse_positive, parse_prior, parse_theta};
use crate::output::{emit, Cell, Table};
use crate::{CliError, Globals};

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[command(subcommand)]
    target: AuditTarget,
}

#[derive(Debug, Subcommand)]
enum AuditTarget {
    /// Classify a transformation and measure its unit distortion.
    Transform(TransformArgs),
    /// Rank agreement between evidence statistics over all (n, k).
    Agreement(AgreementArgs),
    /// Successive differences of three p-values on the raw and −log scales.
    Differences(DifferenceArgs),
}

#[derive(Debug, Args)]
struct TransformArgs {
    /// log, exp, f-to-c, scalar:C, power:P or affine:SLOPE,INTERCEPT
    #[arg(long = "f")]
    transform: String,

    /// LO,HI interval probed.
    #[arg(long, value_parser = parse_pair, default_value = "1,10")]
    interval: (f64, f64),

    /// Unit step.
    #[arg(long, value_parser = parse_positive, default_value = "1")]
    unit: f64,
}

#[derive(Debug, Args)]
struct AgreementArgs {
    #[arg(long, default_value_t = 2)]
    min_n: u64,

    #[arg(long, default_value_t = 30)]
    max_n: u64,

    /// Comma-separated statistics to compare.
    #[arg(long, value_delimiter = ',', default_values_t = ["neglogp".to_string(), "abslogbf".to_string()])]
    kinds: Vec<String>,

    #[arg(long, value_parser = parse_theta, default_value = "0.5")]
    null: PointHypothesis,

    /// Alternative prior for Bayes-factor statistics.
    #[arg(long, value_parser = parse_prior, conflicts_with = "alt")]
    bf: Option<Hypothesis>,

    /// Point alternative for likelihood-ratio statistics.
    #[arg(long, value_parser = parse_theta)]
    alt: Option<PointHypothesis>,
}

#[derive(Debug, Args)]
struct DifferenceArgs {
    /// Three comma-separated p-values.
    #[arg(long, value_delimiter = ',', default_values_t = [0.05, 0.04, 0.001])]
    p: Vec<f64>,
}

pub fn run(args: &AuditArgs, globals: &Globals) -> Result<(), CliError> {
    match &args.target {
        AuditTarget::Transform(a) => transform(a, globals),
        AuditTarget::Agreement(a) => agreement(a, globals),
        AuditTarget::Differences(a) => differences(a, globals),
    }
}

const TRANSFORM_HEADERS: &[&str] = &[
    "transform",
    "lo",
    "hi",
    "unit",
    "grid_points",
    "order_preserving",
    "affine",
    "positive_scalar",
    "grid_distortion",
    "unit_distortion",
    "non_monotone",
    "ordinal",
    "interval",
    "ratio",
    "signed_ratio",
];

fn transform(args: &TransformArgs, globals: &Globals) -> Result<(), CliError> {
    let f: Transform = args
        .transform
        .parse()
        .map_err(|e: evscale_core::Error| CliError::usage("--f", e.to_string()))?;
    let (lo, hi) = args.interval;
    if !(lo < hi) {
        return Err(CliError::usage("--interval", format!("need LO < HI, got {lo},{hi}")));
    }
    let steps = ((hi - lo) / args.unit + 1e-9).floor() as usize;
    let grid: Vec<f64> = (0..=steps).map(|i| lo + args.unit * i as f64).collect();
    let tol = globals.tol.unwrap_or(AFFINE_TOL);
    let audit = classify_transformation(|x| f.apply(x), &grid, tol)?;
    let distortion = unit_distortion(|x| f.apply(x), lo, hi, args.unit)?;

    let mut table = Table::new(TRANSFORM_HEADERS);
    let mut row = vec![
        Cell::text(f.to_string()),
        Cell::Num(lo),
        Cell::Num(hi),
        Cell::Num(args.unit),
        Cell::Num(grid.len() as f64),
        Cell::Bool(audit.order_preserving),
        Cell::Bool(audit.affine),
        Cell::Bool(audit.positive_scalar),
        Cell::Num(audit.unit_distortion),
        Cell::Num(distortion.ratio),
        Cell::Bool(distortion.non_monotone),
    ];
    row.extend(ScaleType::ALL.iter().map(|&s| Cell::Bool(permissible(s, &audit))));
    table.push(row);
    emit(&table, &globals.output)?;
    Ok(())
}

const AGREEMENT_HEADERS: &[&str] =
    &["record", "kind_x", "kind_y", "tau", "n_a", "k_a", "n_b", "k_b", "x_a", "x_b", "y_a", "y_b", "note"];

fn agreement(args: &AgreementArgs, globals: &Globals) -> Result<(), CliError> {
    if args.min_n > args.max_n {
        return Err(CliError::usage("--min-n", format!("{} exceeds --max-n {}", args.min_n, args.max_n)));
    }
    let kinds = args
        .kinds
        .iter()
        .map(|s| s.parse::<StatisticKind>().map_err(|e| CliError::usage("--kinds", e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let h1 = match (args.alt, args.bf) {
        (Some(p), _) => Hypothesis::Point(p),
        (None, Some(c)) => c,
        (None, None) => HypothesisPair::fair_coin_vs_uniform().h1,
    };
    let pair = HypothesisPair::new(h1, Hypothesis::Point(args.null));
    let grid = outcome_grid(args.min_n, args.max_n);
    let report = rank_order_agreement(&grid, &kinds, &pair)?;

    let mut table = Table::new(AGREEMENT_HEADERS);
    let blank = || Cell::Empty;
    for i in 0..kinds.len() {
        for j in i + 1..kinds.len() {
            let mut row = vec![
                Cell::text("tau"),
                Cell::text(kinds[i].name()),
                Cell::text(kinds[j].name()),
                Cell::Num(report.kendall_tau[i][j]),
            ];
            row.extend((0..8).map(|_| blank()));
            row.push(Cell::text(format!("{} outcomes", report.dataset_grid.len())));
            table.push(row);
        }
    }
    for p in &report.discordant_pairs {
        let (lx, ly) = (p.kind_x.is_log_valued(), p.kind_y.is_log_valued());
        table.push(vec![
            Cell::text("discordant"),
            Cell::text(p.kind_x.name()),
            Cell::text(p.kind_y.name()),
            Cell::Empty,
            Cell::Num(p.outcome_a.n()),
            Cell::Num(p.outcome_a.k()),
            Cell::Num(p.outcome_b.n()),
            Cell::Num(p.outcome_b.k()),
            Cell::log_if(lx, p.x_a),
            Cell::log_if(lx, p.x_b),
            Cell::log_if(ly, p.y_a),
            Cell::log_if(ly, p.y_b),
            Cell::Empty,
        ]);
    }
    for (d, e) in &report.excluded {
        let mut row = vec![Cell::text("excluded"), blank(), blank(), blank(), Cell::Num(d.n()), Cell::Num(d.k())];
        row.extend((0..6).map(|_| blank()));
        row.push(Cell::text(e.to_string()));
        table.push(row);
    }
    emit(&table, &globals.output)?;
    Ok(())
}

const DIFFERENCE_HEADERS: &[&str] = &["scale", "p1", "p2", "p3", "first_change", "second_change", "ratio"];

fn differences(args: &DifferenceArgs, globals: &Globals) -> Result<(), CliError> {
    let [p1, p2, p3] = args.p[..] else {
        return Err(CliError::usage("--p", format!("expected three p-values, got {}", args.p.len())));
    };
    if [p1, p2, p3].iter().any(|&p| !(p > 0.0 && p <= 1.0)) {
        return Err(CliError::usage("--p", "p-values must lie in (0, 1]"));
    }
    let d = difference_comparison_demo([p1, p2, p3])?;
    let mut table = Table::new(DIFFERENCE_HEADERS);
    let ps = || [Cell::Num(p1), Cell::Num(p2), Cell::Num(p3)];
    let mut raw = vec![Cell::text("raw")];
    raw.extend(ps());
    raw.extend([Cell::Num(d.raw.0), Cell::Num(d.raw.1), Cell::Num(d.raw_ratio())]);
    table.push(raw);
    let mut neg = vec![Cell::text("neg_log")];
    neg.extend(ps());
    neg.extend([Cell::Log(d.neg_log.0), Cell::Log(d.neg_log.1), Cell::Num(d.neg_log_ratio())]);
    table.push(neg);
    emit(&table, &globals.output)?;
    Ok(())
}
