use std::io::{self, Write};

use serde_json::{Map, Value};

use crate::dataio::{format_number, round_significant, Format};

/// One cell of a generic output table.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self, digits: usize) -> String {
        match self {
            Self::Num(v) => format_number(*v, digits),
            Self::Text(s) => s.clone(),
            Self::Empty => String::new(),
        }
    }

    fn json(&self, digits: usize) -> Value {
        match self {
            Self::Num(v) => serde_json::Number::from_f64(round_significant(*v, digits))
                .map_or(Value::Null, Value::Number),
            Self::Text(s) => Value::String(s.clone()),
            Self::Empty => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Self::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Self::Text(s.to_owned())
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Self::Empty, Self::Num)
    }
}

/// A named-column table with `meta` for the JSON form and `#` comments for CSV.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub meta: Vec<(&'static str, Cell)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            ..Self::default()
        }
    }

    pub fn meta(mut self, key: &'static str, value: impl Into<Cell>) -> Self {
        self.meta.push((key, value.into()));
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write<W: Write>(&self, out: W, format: Format, digits: usize) -> io::Result<()> {
        let mut out = io::BufWriter::new(out);
        match format {
            Format::Csv => {
                for (key, value) in &self.meta {
                    writeln!(out, "# {key} = {}", value.csv(digits))?;
                }
                writeln!(out, "{}", self.columns.join(","))?;
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(|c| c.csv(digits)).collect();
                    writeln!(out, "{}", cells.join(","))?;
                }
            }
            Format::Json => {
                let meta: Map<String, Value> = self
                    .meta
                    .iter()
                    .map(|(k, v)| ((*k).to_owned(), v.json(digits)))
                    .collect();
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let obj: Map<String, Value> = self
                            .columns
                            .iter()
                            .zip(row)
                            .map(|(k, v)| ((*k).to_owned(), v.json(digits)))
                            .collect();
                        Value::Object(obj)
                    })
                    .collect();
                let mut doc = Map::new();
                doc.insert("meta".into(), Value::Object(meta));
                doc.insert("rows".into(), Value::Array(rows));
                serde_json::to_writer_pretty(&mut out, &Value::Object(doc))?;
                writeln!(out)?;
            }
        }
        out.flush()
    }
}
