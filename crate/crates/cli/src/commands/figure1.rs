use clap::{Args, ValueEnum};

use evscale_core::evidence::{log_bf, Support};
use evscale_core::trp::{log_slr_at, trp_composite, trp_simple, DEFAULT_TOL};
use evscale_core::{BinomialOutcome, Hypothesis, PointHypothesis};

use crate::args::{parse_positive, parse_prior, parse_theta};
use crate::output::{emit, Cell, Table};
use crate::{CliError, Globals};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    /// Two point hypotheses (log SLR).
    A,
    /// One-sided composite against a point (log BF).
    B,
}

#[derive(Debug, Args)]
pub struct Figure1Args {
    #[arg(value_enum)]
    variant: Variant,

    /// Comma-separated trial counts, one curve each.
    #[arg(long, value_delimiter = ',', value_parser = parse_positive, default_values_t = [10.0, 100.0])]
    n: Vec<f64>,

    /// Number of evenly spaced y values on [0, 1] per curve.
    #[arg(long, default_value_t = 101)]
    grid: usize,

    /// First point hypothesis (variant a).
    #[arg(long, value_parser = parse_theta, default_value = "0.25")]
    theta1: PointHypothesis,

    /// Second point hypothesis (variant a).
    #[arg(long, value_parser = parse_theta, default_value = "0.75")]
    theta2: PointHypothesis,

    /// Point hypothesis θ0 (variant b).
    #[arg(long, value_parser = parse_theta, default_value = "0.5")]
    null: PointHypothesis,

    /// One-sided composite prior (variant b).
    #[arg(long, value_parser = parse_prior, default_value = "uniform:0,0.5")]
    bf: Hypothesis,
}

const HEADERS: &[&str] = &["variant", "n", "row_type", "y", "log_value", "abs_value", "side"];

fn y_grid(points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![0.5];
    }
    let step = 1.0 / (points - 1) as f64;
    (0..points).map(|i| if i == points - 1 { 1.0 } else { i as f64 * step }).collect()
}

pub fn run(args: &Figure1Args, globals: &Globals) -> Result<(), CliError> {
    if args.grid == 0 {
        return Err(CliError::usage("--grid", "need at least one grid point"));
    }
    let ys = y_grid(args.grid);
    let tol = globals.tol.unwrap_or(DEFAULT_TOL);
    let mut table = Table::new(HEADERS);
    let label = match args.variant {
        Variant::A => "a",
        Variant::B => "b",
    };
    let mut push = |n: f64, row_type: &str, y: f64, v: f64| {
        let side = if row_type == "trp" { "trp" } else { Support::of_log_bf(v).label() };
        table.push(vec![
            Cell::text(label),
            Cell::Num(n),
            Cell::text(row_type),
            Cell::Num(y),
            Cell::Log(v),
            Cell::Log(v.abs()),
            Cell::text(side),
        ]);
    };

    match args.variant {
        Variant::A => {
            let (t1, t2) = (args.theta1.theta(), args.theta2.theta());
            let trp = trp_simple(t1, t2)?;
            for &n in &args.n {
                for &y in &ys {
                    push(n, "curve", y, log_slr_at(n, y, t1, t2)?);
                }
                push(n, "trp", trp, log_slr_at(n, trp, t1, t2)?);
            }
        }
        Variant::B => {
            let h1 = args
                .bf
                .as_composite()
                .ok_or_else(|| CliError::usage("--bf", "expected a composite prior"))?;
            for &n in &args.n {
                for &y in &ys {
                    let d = BinomialOutcome::from_proportion(n, y)?;
                    push(n, "curve", y, log_bf(&d, h1, &args.null)?);
                }
                let r = trp_composite(n, h1, &args.null, tol)?;
                let d = BinomialOutcome::from_proportion(n, r.trp_y)?;
                push(n, "trp", r.trp_y, log_bf(&d, h1, &args.null)?);
            }
        }
    }
    emit(&table, &globals.output)?;
    Ok(())
}
