use std::io::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;

use crate::format;

const APPROX_DIGITS: u32 = 20;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Empty,
    Small(u64),
    /// Arbitrary-size integer, serialised as a decimal string.
    Big(BigInt),
    Rational(BigRational),
    /// Decimal approximation of a rational.
    Approx(BigRational),
    Bool(bool),
    Text(String),
    /// CSV joins with `;`, JSON emits an array of strings.
    List(Vec<String>),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Empty => String::new(),
            Cell::Small(v) => v.to_string(),
            Cell::Big(v) => v.to_string(),
            Cell::Rational(r) => format::rational(r),
            Cell::Approx(r) => format::approx(r, APPROX_DIGITS),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::List(items) => items.join(";"),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Empty => Value::Null,
            Cell::Small(v) => (*v).into(),
            Cell::Bool(b) => (*b).into(),
            Cell::List(items) => items.clone().into(),
            other => other.csv().into(),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        w.flush()
    }

    pub fn to_json(&self, config: Value) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: serde_json::Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, cell)| (c.to_string(), cell.json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        serde_json::json!({ "config": config, "rows": rows })
    }
}
