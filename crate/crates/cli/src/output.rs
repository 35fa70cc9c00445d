//! CSV and JSON rendering of sweep reports.
//!
//! CSV: header row, `.` decimal separator, floats with 17 significant digits,
//! LF line endings. JSON: `{name, metadata, columns, rows}` with one object per
//! CSV row, keys in column order.

use hardy_embed::{Cell, SweepReport};
use serde_json::{Map, Value};

fn csv_field(cell: &Cell) -> String {
    match cell {
        Cell::Int(n) => n.to_string(),
        Cell::Float(x) => format_float(*x),
        Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
        Cell::Text(s) => s.clone(),
        Cell::Bool(b) => b.to_string(),
        Cell::Empty => String::new(),
    }
}

pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

pub fn to_csv(report: &SweepReport) -> String {
    let mut out = report.columns.join(",");
    out.push('\n');
    for row in &report.rows {
        let fields: Vec<String> = row.iter().map(csv_field).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

fn json_value(cell: &Cell) -> Value {
    match cell {
        Cell::Int(n) => Value::from(*n),
        Cell::Float(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
        Cell::Text(s) => Value::from(s.as_str()),
        Cell::Bool(b) => Value::from(*b),
        Cell::Empty => Value::Null,
    }
}

pub fn to_json(report: &SweepReport) -> String {
    let metadata: Map<String, Value> = report
        .metadata
        .iter()
        .map(|(k, v)| (k.clone(), json_value(v)))
        .collect();
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|row| {
            Value::Object(
                report
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.clone(), json_value(v)))
                    .collect(),
            )
        })
        .collect();
    let mut root = Map::new();
    root.insert("name".into(), Value::from(report.name.as_str()));
    root.insert("metadata".into(), Value::Object(metadata));
    root.insert("columns".into(), Value::from(report.columns.clone()));
    root.insert("rows".into(), Value::Array(rows));
    let mut text = serde_json::to_string_pretty(&Value::Object(root)).expect("json values serialize");
    text.push('\n');
    text
}
