use clap::{Args, ValueEnum};

use evscale_core::trp::{log_slr_at, trp_composite, trp_in_bracket, trp_simple, trp_two_sided, DEFAULT_TOL};
use evscale_core::{CompositeHypothesis, Error, Hypothesis, PointHypothesis, TrPResult};

use crate::args::{parse_pair, parse_positive, parse_prior, parse_theta};
use crate::output::{emit, Cell, Table};
use crate::{CliError, Globals};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Setup {
    /// Two point hypotheses; closed-form TrP.
    Simple,
    /// Composite on one side of θ0 (default prior uniform on [0, 1/2]).
    OneSided,
    /// Composite containing θ0 (default prior uniform on [0, 1]); one TrP per side.
    TwoSided,
}

impl Setup {
    fn label(&self) -> &'static str {
        match self {
            Setup::Simple => "simple",
            Setup::OneSided => "one-sided",
            Setup::TwoSided => "two-sided",
        }
    }
}

#[derive(Debug, Args)]
pub struct TrpArgs {
    #[arg(long, value_enum, default_value = "one-sided")]
    setup: Setup,

    /// Comma-separated trial counts.
    #[arg(long, value_delimiter = ',', value_parser = parse_positive, default_values_t = [10.0, 100.0, 1000.0])]
    n: Vec<f64>,

    #[arg(long, value_parser = parse_theta, default_value = "0.25")]
    theta1: PointHypothesis,

    #[arg(long, value_parser = parse_theta, default_value = "0.75")]
    theta2: PointHypothesis,

    /// Point hypothesis θ0 for the composite setups.
    #[arg(long, value_parser = parse_theta, default_value = "0.5")]
    null: PointHypothesis,

    /// Composite prior; defaults depend on --setup.
    #[arg(long, value_parser = parse_prior)]
    bf: Option<Hypothesis>,

    /// Explicit LO,HI search bracket on y (composite setups).
    #[arg(long, value_parser = parse_pair)]
    bracket: Option<(f64, f64)>,
}

const HEADERS: &[&str] = &["setup", "n", "side", "trp_y", "residual", "bracket_width", "status"];

fn ok_row(setup: Setup, r: &TrPResult) -> Vec<Cell> {
    vec![
        Cell::text(setup.label()),
        Cell::Num(r.n),
        Cell::text(r.side.label()),
        Cell::Num(r.trp_y),
        Cell::Log(r.residual),
        Cell::Num(r.bracket_width),
        Cell::text("ok"),
    ]
}

fn err_row(setup: Setup, n: f64, e: &Error) -> Vec<Cell> {
    vec![
        Cell::text(setup.label()),
        Cell::Num(n),
        Cell::Empty,
        Cell::Empty,
        Cell::Empty,
        Cell::Empty,
        Cell::text(format!("error: {e}")),
    ]
}

fn composite(args: &TrpArgs, default: (f64, f64)) -> Result<CompositeHypothesis, CliError> {
    match &args.bf {
        Some(h) => h.as_composite().copied().ok_or_else(|| CliError::usage("--bf", "expected a composite prior")),
        None => Ok(CompositeHypothesis::uniform(default.0, default.1)?),
    }
}

pub fn run(args: &TrpArgs, globals: &Globals) -> Result<(), CliError> {
    let tol = globals.tol.unwrap_or(DEFAULT_TOL);
    let mut table = Table::new(HEADERS);
    let mut successes = 0usize;
    let mut record = |table: &mut Table, setup: Setup, n: f64, r: Result<TrPResult, Error>| match r {
        Ok(r) => {
            successes += 1;
            table.push(ok_row(setup, &r));
        }
        Err(e) => table.push(err_row(setup, n, &e)),
    };

    match args.setup {
        Setup::Simple => {
            let (t1, t2) = (args.theta1.theta(), args.theta2.theta());
            for &n in &args.n {
                let r = trp_simple(t1, t2).and_then(|y| {
                    let residual = log_slr_at(n, y, t1, t2)?.abs();
                    let side = if y < t2 { evscale_core::TrpSide::Below } else { evscale_core::TrpSide::Above };
                    Ok(TrPResult { n, trp_y: y, residual, bracket_width: 0.0, side })
                });
                record(&mut table, args.setup, n, r);
            }
        }
        Setup::OneSided => {
            let h1 = composite(args, (0.0, 0.5))?;
            for &n in &args.n {
                let r = match args.bracket {
                    Some((lo, hi)) => trp_in_bracket(n, &h1, &args.null, lo, hi, tol),
                    None => trp_composite(n, &h1, &args.null, tol),
                };
                record(&mut table, args.setup, n, r);
            }
        }
        Setup::TwoSided => {
            let h1 = composite(args, (0.0, 1.0))?;
            for &n in &args.n {
                if let Some((lo, hi)) = args.bracket {
                    record(&mut table, args.setup, n, trp_in_bracket(n, &h1, &args.null, lo, hi, tol));
                    continue;
                }
                match trp_two_sided(n, &h1, &args.null, tol) {
                    Ok((below, above)) => {
                        record(&mut table, args.setup, n, Ok(below));
                        record(&mut table, args.setup, n, Ok(above));
                    }
                    Err(e) => record(&mut table, args.setup, n, Err(e)),
                }
            }
        }
    }
    emit(&table, &globals.output)?;
    if successes == 0 {
        return Err(CliError::Compute("no transition point could be located".into()));
    }
    Ok(())
}
