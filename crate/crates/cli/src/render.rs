//! Output formats. Every report is first built as a JSON value; CSV and the
//! pretty view are derived from it so all three stay in sync.

use std::fmt::Write as _;

use clap::ValueEnum;
use harbourne_core::num::decimal;
use harbourne_core::Rational;
use num_bigint::BigInt;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

pub fn render(v: &Value, format: Format, decimals: usize) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
            s.push('\n');
            s
        }
        Format::Csv => csv(v),
        Format::Pretty => {
            let mut out = String::new();
            pretty(v, 0, decimals, &mut out);
            out
        }
    }
}

/// `{"num": "..", "den": ".."}` objects.
fn as_rational(m: &Map<String, Value>) -> Option<(&str, &str)> {
    if m.len() != 2 {
        return None;
    }
    match (m.get("num"), m.get("den")) {
        (Some(Value::String(n)), Some(Value::String(d))) => Some((n, d)),
        _ => None,
    }
}

fn exact(n: &str, d: &str) -> String {
    if d == "1" {
        n.to_owned()
    } else {
        format!("{n}/{d}")
    }
}

fn approx(n: &str, d: &str, places: usize) -> Option<String> {
    let q = Rational::new(n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?);
    Some(decimal(&q, places))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => unreachable!("not a scalar"),
    }
}

fn flatten(v: &Value, path: &str, rows: &mut Vec<(String, String)>) {
    let join = |k: &str| if path.is_empty() { k.to_owned() } else { format!("{path}.{k}") };
    match v {
        Value::Object(m) => {
            if let Some((n, d)) = as_rational(m) {
                rows.push((path.to_owned(), exact(n, d)));
            } else {
                for (k, x) in m {
                    flatten(x, &join(k), rows);
                }
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(x, &join(&i.to_string()), rows);
            }
        }
        _ => rows.push((path.to_owned(), scalar(v))),
    }
}

fn csv(v: &Value) -> String {
    let mut rows = Vec::new();
    flatten(v, "", &mut rows);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["field", "value"]).expect("in-memory write");
    for (k, x) in rows {
        w.write_record([k, x]).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV of UTF-8 input")
}

fn inline(v: &Value, places: usize) -> Option<String> {
    match v {
        Value::Object(m) => as_rational(m).map(|(n, d)| match approx(n, d, places) {
            Some(a) if d != "1" => format!("{} (~ {a})", exact(n, d)),
            _ => exact(n, d),
        }),
        Value::Array(xs) if xs.is_empty() => Some("[]".into()),
        Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("[{}]", xs.iter().map(scalar).collect::<Vec<_>>().join(", ")))
        }
        Value::Array(_) => None,
        Value::Null => Some("-".into()),
        _ => Some(scalar(v)),
    }
}

fn pretty(v: &Value, depth: usize, places: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) if as_rational(m).is_none() => {
            for (k, x) in m {
                match inline(x, places) {
                    Some(s) => writeln!(out, "{pad}{k}: {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}{k}:").unwrap();
                        pretty(x, depth + 1, places, out);
                    }
                }
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                match inline(x, places) {
                    Some(s) => writeln!(out, "{pad}[{i}] {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}[{i}]").unwrap();
                        pretty(x, depth + 1, places, out);
                    }
                }
            }
        }
        _ => writeln!(out, "{pad}{}", inline(v, places).unwrap_or_default()).unwrap(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn csv_flattens_rationals() {
        let v = json!({"h": {"num": "-225", "den": "67"}, "t": {"3": 28}, "ok": true});
        assert_eq!(csv(&v), "field,value\nh,-225/67\nok,true\nt.3,28\n");
    }

    #[test]
    fn pretty_shows_decimals() {
        let v = json!({"h": {"num": "-225", "den": "67"}, "n": {"num": "-3", "den": "1"}});
        assert_eq!(render(&v, Format::Pretty, 4), "h: -225/67 (~ -3.3582)\nn: -3\n");
    }
}
