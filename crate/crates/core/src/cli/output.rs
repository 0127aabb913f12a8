//! Deterministic JSON and CSV emission.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use super::config::{OutputFormat, RunConfig};

/// A flat table with a fixed column order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn json_rows(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| {
                    Value::Object(
                        self.columns.iter().cloned().zip(r.iter().cloned()).collect(),
                    )
                })
                .collect(),
        )
    }
}

/// One pass/fail line of a `verify` report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Body {
    Rows(Table),
    Checks(Vec<Check>),
    /// A structured report, with a flat table for CSV output.
    Report(Value, Table),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub config: RunConfig,
    pub warnings: Vec<String>,
    pub body: Body,
}

pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

/// Canonical JSON text of the config, used for the CSV hash.
pub fn config_json(config: &RunConfig) -> String {
    let mut s = String::new();
    write_value(&mut s, &serde_json::to_value(config).expect("config serializes"), 0, false);
    s
}

pub fn config_hash(config: &RunConfig) -> String {
    hex::encode(Sha256::digest(config_json(config).as_bytes()))
}

fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_scalar(out: &mut String, v: &Value) {
    match v {
        Value::Number(n) if n.is_f64() => out.push_str(&format_float(n.as_f64().unwrap())),
        other => out.push_str(&other.to_string()),
    }
}

/// Sorted keys, floats with 17 significant digits.
fn write_value(out: &mut String, v: &Value, indent: usize, pretty: bool) {
    let pad = |out: &mut String, n: usize| {
        if pretty {
            out.push('\n');
            out.push_str(&"  ".repeat(n));
        }
    };
    match v {
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push('[');
            for (k, item) in items.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                pad(out, indent + 1);
                write_value(out, item, indent + 1, pretty);
            }
            pad(out, indent);
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push('{');
            for (k, key) in keys.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                pad(out, indent + 1);
                out.push_str(&Value::String((*key).clone()).to_string());
                out.push(':');
                if pretty {
                    out.push(' ');
                }
                write_value(out, &map[*key], indent + 1, pretty);
            }
            pad(out, indent);
            out.push('}');
        }
        scalar => write_scalar(out, scalar),
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => format_float(n.as_f64().unwrap()),
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

impl Output {
    pub fn render(&self) -> String {
        match self.config.format {
            OutputFormat::Json => self.render_json(),
            OutputFormat::Csv => self.render_csv(),
        }
    }

    pub fn render_json(&self) -> String {
        let mut top = serde_json::Map::new();
        top.insert("config".into(), serde_json::to_value(&self.config).expect("config serializes"));
        top.insert(
            "warnings".into(),
            Value::Array(self.warnings.iter().cloned().map(Value::String).collect()),
        );
        match &self.body {
            Body::Rows(t) => {
                top.insert("rows".into(), t.json_rows());
            }
            Body::Checks(c) => {
                top.insert("checks".into(), serde_json::to_value(c).expect("checks serialize"));
            }
            Body::Report(v, _) => {
                top.insert("rows".into(), Value::Array(vec![v.clone()]));
            }
        }
        let mut s = String::new();
        write_value(&mut s, &Value::Object(top), 0, true);
        s.push('\n');
        s
    }

    pub fn render_csv(&self) -> String {
        let table = match &self.body {
            Body::Rows(t) | Body::Report(_, t) => t.clone(),
            Body::Checks(checks) => {
                let mut t = Table::new(&["suite", "name", "passed", "measured", "tolerance"]);
                for c in checks {
                    t.push(vec![
                        Value::String(c.suite.clone()),
                        Value::String(c.name.clone()),
                        Value::Bool(c.passed),
                        num(c.measured),
                        num(c.tolerance),
                    ]);
                }
                t
            }
        };
        let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
        w.write_record(&table.columns).expect("in-memory write");
        for row in &table.rows {
            w.write_record(row.iter().map(csv_cell)).expect("in-memory write");
        }
        let body = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8");
        format!("# config-sha256: {}\n{body}", config_hash(&self.config))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn floats_have_seventeen_digits_and_keys_are_sorted() {
        let mut s = String::new();
        write_value(&mut s, &json!({"b": 0.1, "a": [1, 2.5, null, "x"]}), 0, false);
        assert_eq!(
            s,
            r#"{"a":[1,2.5000000000000000e0,null,"x"],"b":1.0000000000000001e-1}"#
        );
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["b"].as_f64().unwrap(), 0.1);
    }
}
