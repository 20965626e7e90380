// SPDX-License-Identifier: Apache-2.0

//! Tables and their CSV and JSON renderings.

use std::io::Write;

use serde_json::{json, Map, Value};

use crate::config::RunConfig;
use crate::CliError;

/// Significant digits kept in every written float.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Shortest round-trip text of `x` after rounding to 12 significant digits.
///
/// Magnitudes in `[1e-4, 1e15)` print positionally, others in exponent
/// form; non-finite values print as `nan`, `inf` and `-inf`.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let rounded = round_significant(x);
    if rounded == 0.0 {
        return "0".into();
    }
    let magnitude = rounded.abs();
    if (1e-4..1e15).contains(&magnitude) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

fn round_significant(x: f64) -> f64 {
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses")
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => format_float(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) if x.is_finite() => json!(round_significant(*x)),
            Cell::Num(x) => json!(format_float(*x)),
            Cell::Int(i) => json!(i),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Num)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n as i64)
    }
}

impl From<u32> for Cell {
    fn from(n: u32) -> Self {
        Cell::Int(n as i64)
    }
}

/// Output of one command: a table plus free-form notes (diagnostics that
/// do not fit the schema).
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            rows: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), CliError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        w.flush()?;
        Ok(())
    }

    /// JSON object with the resolved config, the columns, the rows and the
    /// notes.
    pub fn write_json<W: Write>(&self, config: &RunConfig, mut out: W) -> Result<(), CliError> {
        let settings: Map<String, Value> = config
            .to_settings()
            .into_iter()
            .map(|(k, v)| (k.to_string(), Value::String(v)))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| Value::Array(row.iter().map(Cell::json).collect()))
            .collect();
        let doc = json!({
            "config": settings,
            "columns": self.columns,
            "rows": rows,
            "notes": self.notes,
        });
        serde_json::to_writer_pretty(&mut out, &doc)?;
        writeln!(out)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn float_text() {
        assert_eq!(format_float(-0.5), "-0.5");
        assert_eq!(format_float(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_float(-1.0 / 18.0), "-0.0555555555556");
        assert_eq!(format_float(2.0), "2");
        assert_eq!(format_float(1.234e-9), "1.234e-9");
        assert_eq!(format_float(0.0), "0");
        assert_eq!(format_float(-0.0), "0");
        assert_eq!(format_float(f64::INFINITY), "inf");
        assert_eq!(format_float(123456789012345.0), "123456789012000");
    }

    #[test]
    fn csv_layout() {
        let mut r = Report::new(&["a", "b", "c"]);
        r.push(vec![Cell::Num(0.1), Cell::Empty, Cell::Bool(true)]);
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "a,b,c\n0.1,,true\n");
    }

    proptest! {
        #[test]
        fn twelve_digits_round_trip(x in prop::num::f64::NORMAL) {
            let text = format_float(x);
            let back: f64 = text.parse().unwrap();
            prop_assert!((back - x).abs() <= 5e-12 * x.abs());
            prop_assert_eq!(format_float(back), text.clone());
            let digits = text.split('e').next().unwrap().chars().filter(char::is_ascii_digit).collect::<String>();
            prop_assert!(digits.trim_start_matches('0').trim_end_matches('0').len() <= SIGNIFICANT_DIGITS);
        }
    }
}
