use clap::{Args, ValueEnum};

use evscale_core::trp::{zero_path, ZeroPathConfig, ZeroPathReport};
use evscale_core::ZeroPathKind;

use crate::args::{parse_nonnegative, parse_positive};
use crate::output::{emit, Cell, Table};
use crate::{CliError, Globals};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PathArg {
    /// Fixed y, n shrinking toward 0.
    ShrinkN,
    /// y held at the transition point while n grows.
    RideTrp,
}

#[derive(Debug, Args)]
pub struct ZeroPathArgs {
    /// Path to trace; both when omitted.
    #[arg(value_enum)]
    path: Option<PathArg>,

    /// Trace both paths.
    #[arg(long, conflicts_with = "path")]
    both: bool,

    /// Fixed proportion for shrink-n.
    #[arg(long, value_parser = parse_positive)]
    y: Option<f64>,

    /// Comma-separated trial counts (decreasing for shrink-n, increasing for ride-trp).
    #[arg(long, value_delimiter = ',', value_parser = parse_nonnegative)]
    n: Vec<f64>,
}

const HEADERS: &[&str] = &["path", "row_type", "n", "y", "log_bf", "abs_log_bf", "against_both"];

fn push_report(table: &mut Table, report: &ZeroPathReport) {
    let label = report.path_kind.label();
    for row in &report.trace {
        table.push(vec![
            Cell::text(label),
            Cell::text("trace"),
            Cell::Num(row.n),
            Cell::Num(row.y),
            Cell::Log(row.log_bf),
            Cell::Log(row.log_bf.abs()),
            Cell::Log(row.against_both),
        ]);
    }
    let end = report.endpoint_summary;
    table.push(vec![
        Cell::text(label),
        Cell::text("endpoint"),
        Cell::Empty,
        Cell::Empty,
        Cell::Log(end.final_log_bf),
        Cell::Log(end.final_log_bf.abs()),
        Cell::Log(end.final_against_both),
    ]);
}

pub fn run(args: &ZeroPathArgs, globals: &Globals) -> Result<(), CliError> {
    let kinds = match args.path.filter(|_| !args.both) {
        Some(PathArg::ShrinkN) => vec![ZeroPathKind::ShrinkN],
        Some(PathArg::RideTrp) => vec![ZeroPathKind::RideTrP],
        None => vec![ZeroPathKind::ShrinkN, ZeroPathKind::RideTrP],
    };
    if kinds.len() > 1 && !args.n.is_empty() {
        return Err(CliError::usage("--n", "pick a single path when overriding the n sequence"));
    }
    if let Some(y) = args.y {
        if !(y < 1.0) {
            return Err(CliError::usage("--y", format!("proportion must lie in (0, 1), got {y}")));
        }
    }
    let mut table = Table::new(HEADERS);
    for kind in kinds {
        let mut config = ZeroPathConfig::default_for(kind);
        if !args.n.is_empty() {
            config.n_values = args.n.clone();
        }
        if let Some(y) = args.y {
            config.y = y;
        }
        if let Some(t) = globals.tol {
            config.tol = t;
        }
        let report = zero_path(kind, &config)?;
        push_report(&mut table, &report);
    }
    emit(&table, &globals.output)?;
    Ok(())
}
