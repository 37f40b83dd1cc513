use std::fmt;
use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Value};

pub const SCHEMA: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Positive = 0,
    Negative = 1,
    InputError = 2,
    Unknown = 3,
}

#[derive(Debug)]
pub struct CliError(pub String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<fig8_core::error::Error> for CliError {
    fn from(e: fig8_core::error::Error) -> Self {
        CliError(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError(e.to_string())
    }
}

pub fn input_error(msg: impl Into<String>) -> CliError {
    CliError(msg.into())
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i128),
    Float(f64),
    Text(String),
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => sig9(*x),
            Cell::Text(s) => s.clone(),
        }
    }
}

/// A CSV table with a fixed header.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// Result of one subcommand: a JSON payload merged under the common header
/// fields, an optional table for CSV output, and the exit status.
pub struct Report {
    pub status: Status,
    pub payload: Map<String, Value>,
    pub table: Option<Table>,
    /// Format used when `--format` is not given.
    pub default_format: Format,
}

impl Report {
    pub fn new(status: Status, payload: impl Serialize) -> Result<Self, CliError> {
        let payload = match serde_json::to_value(payload).map_err(|e| CliError(e.to_string()))? {
            Value::Object(m) => m,
            other => {
                let mut m = Map::new();
                m.insert("value".into(), other);
                m
            }
        };
        Ok(Report { status, payload, table: None, default_format: Format::Json })
    }

    pub fn with_table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }

    pub fn prefer_csv(mut self) -> Self {
        self.default_format = Format::Csv;
        self
    }
}

/// `%.9g`: nine significant digits, trailing zeros dropped.
pub fn sig9(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..9).contains(&exp) {
        let decimals = (8 - exp) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{}{:02}", trim_zeros(mantissa.to_string()), if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

pub fn render_json(command: &str, seed: Option<u64>, report: &Report) -> Result<Vec<u8>, CliError> {
    let mut top = Map::new();
    top.insert("schema".into(), SCHEMA.into());
    top.insert("command".into(), command.into());
    top.insert("seed".into(), seed.map_or(Value::Null, Value::from));
    for (k, v) in &report.payload {
        top.insert(k.clone(), v.clone());
    }
    let mut out = serde_json::to_vec_pretty(&Value::Object(top)).map_err(|e| CliError(e.to_string()))?;
    out.push(b'\n');
    Ok(out)
}

pub fn render_csv(command: &str, report: &Report) -> Result<Vec<u8>, CliError> {
    let table = report.table.as_ref().ok_or_else(|| input_error(format!("{command} has no CSV output")))?;
    if table.rows.is_empty() {
        return Err(input_error("empty series: nothing to emit"));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&table.header)?;
    for row in &table.rows {
        w.write_record(row.iter().map(Cell::render))?;
    }
    w.into_inner().map_err(|e| CliError(e.to_string()))
}

pub fn emit(bytes: &[u8], path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, bytes)?,
        None => std::io::stdout().lock().write_all(bytes)?,
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(sig9(9.0), "9");
        assert_eq!(sig9(4.394_449_154_672_439), "4.39444915");
        assert_eq!(sig9(0.5), "0.5");
        assert_eq!(sig9(-1.0 / 3.0), "-0.333333333");
        assert_eq!(sig9(123456789.4), "123456789");
        assert_eq!(sig9(1234567891.0), "1.23456789e+09");
        assert_eq!(sig9(1.5e-7), "1.5e-07");
        assert_eq!(sig9(0.0), "0");
    }

    #[test]
    fn empty_series_rejected() {
        let r = Report::new(Status::Positive, serde_json::json!({})).unwrap().with_table(Table::new(vec!["x", "y"]));
        assert!(render_csv("t", &r).is_err());
        let r = Report::new(Status::Positive, serde_json::json!({})).unwrap();
        assert!(render_csv("t", &r).is_err());
    }

    #[test]
    fn header_first() {
        let r = Report::new(Status::Positive, serde_json::json!({"b": 1, "a": 2})).unwrap();
        let s = String::from_utf8(render_json("t", Some(7), &r).unwrap()).unwrap();
        let keys: Vec<usize> = ["schema", "command", "seed", "\"b\"", "\"a\""].iter().map(|k| s.find(k).unwrap()).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]), "{s}");
    }
}
