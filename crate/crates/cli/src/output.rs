use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::ValueEnum;

const SIG_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Jsonl,
}

#[derive(Debug, Clone)]
pub struct OutputSpec {
    pub format: Format,
    pub destination: Option<PathBuf>,
    pub log_display_base: f64,
}

impl OutputSpec {
    fn log_divisor(&self) -> f64 {
        if self.log_display_base == std::f64::consts::E {
            1.0
        } else {
            self.log_display_base.ln()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    /// A natural-log quantity, rescaled for display by `--log-base`.
    Log(f64),
    Bool(bool),
    Text(String),
    Empty,
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Cell {
        Cell::Text(s.into())
    }

    pub fn log_if(is_log: bool, v: f64) -> Cell {
        if is_log {
            Cell::Log(v)
        } else {
            Cell::Num(v)
        }
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    headers: &'static [&'static str],
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(headers: &'static [&'static str]) -> Self {
        Table { headers, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }
}

/// Renders `v` with 12 significant digits in the style of C's `%.12g`.
pub fn format_sig(v: f64) -> String {
    if v.is_nan() {
        return "NaN".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..SIG_DIGITS as i32).contains(&exp) {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, v)).to_string()
    } else {
        format!("{}e{}", trim_zeros(mantissa), exp)
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn render(cell: &Cell, divisor: f64) -> String {
    match cell {
        Cell::Num(v) => format_sig(*v),
        Cell::Log(v) => format_sig(*v / divisor),
        Cell::Bool(b) => b.to_string(),
        Cell::Text(s) => s.clone(),
        Cell::Empty => String::new(),
    }
}

fn json_value(cell: &Cell, divisor: f64) -> serde_json::Value {
    use serde_json::Value;
    let number = |v: f64| {
        let shown: f64 = format_sig(v).parse().unwrap_or(f64::NAN);
        // integral values print as integers, matching the CSV rendering
        if shown.fract() == 0.0 && shown.abs() < 9.007e15 {
            return Value::Number((shown as i64).into());
        }
        serde_json::Number::from_f64(shown).map(Value::Number).unwrap_or(Value::Null)
    };
    match cell {
        Cell::Num(v) => number(*v),
        Cell::Log(v) => number(*v / divisor),
        Cell::Bool(b) => Value::Bool(*b),
        Cell::Text(s) => Value::String(s.clone()),
        Cell::Empty => Value::Null,
    }
}

fn write_table<W: Write>(table: &Table, spec: &OutputSpec, out: W) -> io::Result<()> {
    let divisor = spec.log_divisor();
    match spec.format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(out);
            w.write_record(table.headers)?;
            for row in &table.rows {
                w.write_record(row.iter().map(|c| render(c, divisor)))?;
            }
            w.flush()
        }
        Format::Jsonl => {
            let mut out = out;
            for row in &table.rows {
                let mut line = String::from("{");
                for (i, (key, cell)) in table.headers.iter().zip(row).enumerate() {
                    if i > 0 {
                        line.push(',');
                    }
                    line.push_str(&serde_json::to_string(key).expect("string key"));
                    line.push(':');
                    line.push_str(&json_value(cell, divisor).to_string());
                }
                line.push_str("}\n");
                out.write_all(line.as_bytes())?;
            }
            out.flush()
        }
    }
}

pub fn emit(table: &Table, spec: &OutputSpec) -> io::Result<()> {
    match &spec.destination {
        Some(path) => write_table(table, spec, BufWriter::new(File::create(path)?)),
        None => write_table(table, spec, io::stdout().lock()),
    }
}
