//! Rendering of result tables as CSV, aligned text and JSON.

use heinz_core::report::format_number;
use heinz_core::NamedReport64;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::args::Format;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(usize),
    Num(f64),
    Text(String),
    Empty,
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Num(v) => format_number(*v),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(i) => Value::from(*i),
            Cell::Num(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Empty => Value::Null,
        }
    }
}

pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let obj: Map<String, Value> = self
                            .headers
                            .iter()
                            .zip(row)
                            .map(|(h, c)| (h.to_string(), c.json()))
                            .collect();
                        Value::Object(obj)
                    })
                    .collect();
                let mut s = serde_json::to_string_pretty(&rows).expect("plain values");
                s.push('\n');
                s
            }
            Format::Csv | Format::Table => {
                let mut records = vec![self.headers.iter().map(|h| h.to_string()).collect()];
                records.extend(self.rows.iter().map(|row| row.iter().map(Cell::text).collect()));
                render_records(&records, format)
            }
        }
    }
}

/// CSV or space-aligned columns.
pub fn render_records(records: &[Vec<String>], format: Format) -> String {
    if format == Format::Csv {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in records {
            w.write_record(r).expect("in-memory write");
        }
        return String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8");
    }
    let cols = records.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            records
                .iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for r in records {
        let line: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(s, &w)| format!("{s:>w$}"))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub type CheckReport = NamedReport64;

#[derive(Debug, Serialize)]
pub struct VerifyOutput {
    pub checks: Vec<CheckReport>,
    pub pass: bool,
}

impl VerifyOutput {
    pub fn new(checks: Vec<CheckReport>) -> Self {
        let pass = checks.iter().all(|c| c.report.pass());
        Self { checks, pass }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("finite report");
                s.push('\n');
                s
            }
            Format::Csv | Format::Table => {
                let mut w = csv::Writer::from_writer(Vec::new());
                for (i, c) in self.checks.iter().enumerate() {
                    let map = c.map.map(|m| m.to_string()).unwrap_or_default();
                    let prefix = [("check", c.name.clone()), ("n", c.n.to_string()), ("map", map)];
                    c.report.write_csv(&mut w, &prefix, i == 0).expect("in-memory write");
                }
                let bytes = w.into_inner().expect("in-memory flush");
                if format == Format::Csv {
                    return String::from_utf8(bytes).expect("utf-8");
                }
                let mut reader = csv::ReaderBuilder::new()
                    .has_headers(false)
                    .from_reader(bytes.as_slice());
                let records: Vec<Vec<String>> = reader
                    .records()
                    .map(|r| r.expect("own csv").iter().map(str::to_string).collect())
                    .collect();
                let mut out = render_records(&records, Format::Table);
                out.push('\n');
                for c in &self.checks {
                    let map = c.map.map(|m| format!(" map {m}")).unwrap_or_default();
                    out.push_str(&format!(
                        "{} n={}{}: {} (min margin {})\n",
                        c.name,
                        c.n,
                        map,
                        if c.report.pass() { "pass" } else { "FAIL" },
                        format_number(c.report.summary.min_margin),
                    ));
                }
                out.push_str(if self.pass { "overall: pass\n" } else { "overall: FAIL\n" });
                out
            }
        }
    }
}
