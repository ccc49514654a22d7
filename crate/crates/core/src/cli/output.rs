//! JSON-lines records: complex numbers as {re, im}, exact rationals as "p/q".

use std::io::Write;

use num_complex::Complex64;
use serde_json::{json, Map, Value};

use super::config::Format;
use crate::util::format_rational;
use crate::Q;

pub fn cx(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

pub fn rat(q: &Q) -> Value {
    Value::String(format_rational(q))
}

/// A record of the given kind carrying the (value, error_estimate, method) triple.
pub fn record(kind: &str, value: Value, error: f64, method: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("kind".into(), kind.into());
    m.insert("value".into(), value);
    m.insert("error_estimate".into(), json!(error));
    m.insert("method".into(), method.into());
    m
}

/// Collects records in input order; written out once the command finishes.
#[derive(Default)]
pub struct Sink {
    records: Vec<Map<String, Value>>,
}

impl Sink {
    pub fn emit(&mut self, rec: Map<String, Value>) {
        self.records.push(rec);
    }

    pub fn write(self, out: &mut dyn Write, format: Format) -> std::io::Result<()> {
        for rec in self.records {
            match format {
                Format::Json => writeln!(out, "{}", Value::Object(rec))?,
                Format::Text => {
                    let line: Vec<String> = rec
                        .into_iter()
                        .map(|(k, v)| match v {
                            Value::String(s) => format!("{k}={s}"),
                            other => format!("{k}={other}"),
                        })
                        .collect();
                    writeln!(out, "{}", line.join(" "))?
                }
            }
        }
        Ok(())
    }
}
