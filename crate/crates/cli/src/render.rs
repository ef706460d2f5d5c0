use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

/// Significant digits of numbers in JSON and CSV output.
const MACHINE_DIGITS: usize = 9;
const PRETTY_DIGITS: usize = 4;

/// Command output before formatting.
pub enum Doc {
    /// A nested report.
    Tree(Value),
    /// Rows of numbers or strings under named columns.
    Table {
        columns: Vec<String>,
        rows: Vec<Vec<Value>>,
    },
    /// One JSON document per line in JSON mode, a table otherwise.
    Lines {
        columns: Vec<String>,
        records: Vec<(Value, Vec<Value>)>,
    },
}

pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits - 1, x).parse().unwrap_or(x)
}

/// Rounds every number in `v` to [`MACHINE_DIGITS`] significant digits.
pub fn rounded(v: Value) -> Value {
    match v {
        Value::Number(n) => match n.as_f64() {
            Some(x) if !(n.is_i64() || n.is_u64()) => {
                serde_json::Number::from_f64(round_sig(x, MACHINE_DIGITS))
                    .map_or(Value::Null, Value::Number)
            }
            _ => Value::Number(n),
        },
        Value::Array(a) => Value::Array(a.into_iter().map(rounded).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, rounded(v))).collect()),
        other => other,
    }
}

fn pretty_number(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let a = x.abs();
    if (1e-3..1e5).contains(&a) {
        let decimals = (PRETTY_DIGITS as i32 - 1 - a.log10().floor() as i32).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{x:.*e}", PRETTY_DIGITS - 1)
    }
}

fn scalar(v: &Value, pretty: bool) -> String {
    match v {
        Value::Null if pretty => "-".into(),
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) if pretty && !(n.is_i64() || n.is_u64()) => {
            pretty_number(n.as_f64().unwrap_or(f64::NAN))
        }
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        Value::Array(a) => {
            let items: Vec<String> = a.iter().map(|x| scalar(x, pretty)).collect();
            if pretty {
                format!("[{}]", items.join(", "))
            } else {
                items.join(" ")
            }
        }
        Value::Object(_) => serde_json::to_string(v).unwrap_or_default(),
    }
}

fn is_flat_array(v: &Value) -> bool {
    matches!(v, Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()))
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, Value)>) {
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, x, out);
            }
        }
        Value::Array(a) if !is_flat_array(v) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}.{i}"), x, out);
            }
        }
        _ => out.push((prefix.to_string(), v.clone())),
    }
}

fn write_pretty_tree(w: &mut impl Write, v: &Map<String, Value>, depth: usize) -> io::Result<()> {
    let width = v.keys().map(|k| k.chars().count()).max().unwrap_or(0);
    for (k, x) in v {
        let pad = "  ".repeat(depth);
        match x {
            Value::Object(o) => {
                writeln!(w, "{pad}{k}:")?;
                write_pretty_tree(w, o, depth + 1)?;
            }
            Value::Array(a) if !is_flat_array(x) => {
                writeln!(w, "{pad}{k}:")?;
                for (i, item) in a.iter().enumerate() {
                    match item {
                        Value::Object(o) => {
                            writeln!(w, "{pad}  - [{i}]")?;
                            write_pretty_tree(w, o, depth + 2)?;
                        }
                        other => writeln!(w, "{pad}  - {}", scalar(other, true))?,
                    }
                }
            }
            _ => writeln!(w, "{pad}{k:<width$}  {}", scalar(x, true))?,
        }
    }
    Ok(())
}

fn write_csv(
    w: impl Write,
    columns: &[String],
    rows: impl Iterator<Item = Vec<String>>,
) -> io::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(columns)?;
    for r in rows {
        out.write_record(&r)?;
    }
    out.flush()
}

fn write_pretty_table(
    w: &mut impl Write,
    columns: &[String],
    rows: &[Vec<String>],
) -> io::Result<()> {
    let widths: Vec<usize> = (0..columns.len())
        .map(|c| {
            rows.iter()
                .map(|r| r[c].chars().count())
                .chain([columns[c].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, &wd)| format!("{c:>wd$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    writeln!(w, "{}", line(columns))?;
    for r in rows {
        writeln!(w, "{}", line(r))?;
    }
    Ok(())
}

pub fn render(doc: Doc, format: Format, w: &mut impl Write) -> io::Result<()> {
    match (doc, format) {
        (Doc::Tree(v), Format::Json) => {
            serde_json::to_writer_pretty(&mut *w, &rounded(v))?;
            writeln!(w)
        }
        (Doc::Tree(v), Format::Csv) => {
            let mut flat = Vec::new();
            flatten("", &rounded(v), &mut flat);
            let rows = flat.iter().map(|(k, x)| vec![k.clone(), scalar(x, false)]);
            write_csv(w, &["field".into(), "value".into()], rows)
        }
        (Doc::Tree(v), Format::Pretty) => match v {
            Value::Object(o) => write_pretty_tree(w, &o, 0),
            other => writeln!(w, "{}", scalar(&other, true)),
        },
        (Doc::Table { columns, rows }, Format::Json) => {
            let records: Vec<Value> = rows
                .into_iter()
                .map(|r| Value::Object(columns.iter().cloned().zip(r).collect()))
                .collect();
            serde_json::to_writer_pretty(&mut *w, &rounded(Value::Array(records)))?;
            writeln!(w)
        }
        (Doc::Table { columns, rows }, Format::Csv) => write_csv(
            w,
            &columns,
            rows.iter().map(|r| {
                r.iter()
                    .map(|x| scalar(&rounded(x.clone()), false))
                    .collect()
            }),
        ),
        (Doc::Table { columns, rows }, Format::Pretty) => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| r.iter().map(|x| scalar(x, true)).collect())
                .collect();
            write_pretty_table(w, &columns, &cells)
        }
        (Doc::Lines { records, .. }, Format::Json) => {
            for (v, _) in records {
                serde_json::to_writer(&mut *w, &rounded(v))?;
                writeln!(w)?;
            }
            Ok(())
        }
        (Doc::Lines { columns, records }, f) => {
            let rows = records.into_iter().map(|(_, r)| r).collect();
            render(Doc::Table { columns, rows }, f, w)
        }
    }
}
