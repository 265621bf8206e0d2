//! Rendering: every command builds a small document (ordered key-value
//! metadata plus an optional table) and emits it as an aligned table, CSV,
//! or JSON with sorted keys. All three are deterministic.

use clap::ValueEnum;
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Default)]
pub struct Doc {
    pub meta: Vec<(String, String)>,
    pub table: Option<Table>,
}

impl Doc {
    pub fn kv(mut self, key: &str, value: impl ToString) -> Self {
        self.meta.push((key.to_string(), value.to_string()));
        self
    }

    pub fn with_table<C: ToString>(
        mut self,
        columns: impl IntoIterator<Item = C>,
        rows: Vec<Vec<String>>,
    ) -> Self {
        self.table = Some(Table {
            columns: columns.into_iter().map(|c| c.to_string()).collect(),
            rows,
        });
        self
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Table => self.emit_table(),
            Format::Csv => self.emit_csv(),
            Format::Json => self.emit_json(),
        }
    }

    fn emit_table(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            let _ = writeln!(out, "{k}: {v}");
        }
        if let Some(t) = &self.table {
            if !self.meta.is_empty() {
                out.push('\n');
            }
            let mut widths: Vec<usize> = t.columns.iter().map(|c| c.len()).collect();
            for row in &t.rows {
                for (i, cell) in row.iter().enumerate() {
                    widths[i] = widths[i].max(cell.len());
                }
            }
            let line = |cells: &[String], widths: &[usize]| {
                let mut s = String::new();
                for (i, cell) in cells.iter().enumerate() {
                    if i > 0 {
                        s.push_str("  ");
                    }
                    let _ = write!(s, "{cell:<w$}", w = widths[i]);
                }
                s.trim_end().to_string()
            };
            let _ = writeln!(out, "{}", line(&t.columns, &widths));
            for row in &t.rows {
                let _ = writeln!(out, "{}", line(row, &widths));
            }
        }
        out
    }

    /// CSV covers the table section; a document without one becomes
    /// `key,value` rows.
    fn emit_csv(&self) -> String {
        let mut out = String::new();
        match &self.table {
            Some(t) => {
                let _ = writeln!(out, "{}", csv_row(&t.columns));
                for row in &t.rows {
                    let _ = writeln!(out, "{}", csv_row(row));
                }
            }
            None => {
                let _ = writeln!(out, "key,value");
                for (k, v) in &self.meta {
                    let _ = writeln!(out, "{}", csv_row(&[k.clone(), v.clone()]));
                }
            }
        }
        out
    }

    fn emit_json(&self) -> String {
        // serde_json maps are sorted by key by default.
        let mut obj = serde_json::Map::new();
        for (k, v) in &self.meta {
            obj.insert(k.clone(), guess_scalar(v));
        }
        if let Some(t) = &self.table {
            let rows: Vec<serde_json::Value> = t
                .rows
                .iter()
                .map(|row| {
                    let mut o = serde_json::Map::new();
                    for (c, cell) in t.columns.iter().zip(row) {
                        o.insert(c.clone(), guess_scalar(cell));
                    }
                    serde_json::Value::Object(o)
                })
                .collect();
            obj.insert("rows".into(), serde_json::Value::Array(rows));
        }
        let mut s = serde_json::to_string_pretty(&serde_json::Value::Object(obj))
            .expect("string maps always serialize");
        s.push('\n');
        s
    }
}

/// Integers and booleans stay typed in JSON; everything else is a string.
fn guess_scalar(v: &str) -> serde_json::Value {
    if let Ok(i) = v.parse::<i64>() {
        return serde_json::Value::from(i);
    }
    if let Ok(b) = v.parse::<bool>() {
        return serde_json::Value::from(b);
    }
    serde_json::Value::from(v)
}

fn csv_cell(cell: &str) -> String {
    if cell.contains([',', '"', '\n']) {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

fn csv_row<S: AsRef<str>>(cells: &[S]) -> String {
    cells
        .iter()
        .map(|c| csv_cell(c.as_ref()))
        .collect::<Vec<_>>()
        .join(",")
}

/// A serde value printed with sorted keys (used for raw result objects so
/// JSON output round-trips through the same types).
pub fn sorted_json<T: serde::Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("in-memory serialization");
    let mut s = serde_json::to_string_pretty(&v).expect("value serialization");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Doc {
        Doc::default()
            .kv("n", 6)
            .kv("kind", "census")
            .with_table(
                ["order", "count"],
                vec![
                    vec!["2".into(), "15".into()],
                    vec!["3".into(), "20".into()],
                ],
            )
    }

    #[test]
    fn table_is_aligned() {
        let text = sample().emit(Format::Table);
        assert!(text.contains("n: 6"));
        assert!(text.contains("order  count"));
        assert!(text.contains("2      15"));
    }

    #[test]
    fn csv_has_header_and_rows() {
        let text = sample().emit(Format::Csv);
        assert_eq!(text, "order,count\n2,15\n3,20\n");
    }

    #[test]
    fn json_keys_are_sorted() {
        let text = sample().emit(Format::Json);
        let kind = text.find("\"kind\"").unwrap();
        let n = text.find("\"n\"").unwrap();
        let rows = text.find("\"rows\"").unwrap();
        assert!(kind < n && n < rows);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["rows"][0]["count"], 15);
    }

    #[test]
    fn csv_cells_with_commas_are_quoted() {
        let row = csv_row(&["{0,1}", "plain"]);
        assert_eq!(row, "\"{0,1}\",plain");
    }
}
