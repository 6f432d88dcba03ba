//! Rendering of tables and key-value reports.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::config::Format;
use crate::error::{CliError, CliResult};
use crate::format::{csv_row, g9};

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

fn meta_json(meta: &[(String, String)]) -> Value {
    Value::Object(
        meta.iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect(),
    )
}

impl Table {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let header: Vec<String> = self.meta.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let mut out = format!("# {}\n{}\n", header.join(" "), self.columns.join(","));
                for row in &self.rows {
                    out.push_str(&csv_row(row));
                    out.push('\n');
                }
                out
            }
            Format::Json => {
                let doc = json!({
                    "meta": meta_json(&self.meta),
                    "columns": self.columns,
                    "rows": self.rows,
                });
                let mut s = serde_json::to_string_pretty(&doc).expect("finite values");
                s.push('\n');
                s
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Field {
    Num(f64),
    Text(String),
    List(Vec<f64>),
}

/// Ordered key-value report, printed as aligned text or JSON.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Record {
    pub meta: Vec<(String, String)>,
    pub fields: Vec<(String, Field)>,
}

impl Record {
    pub fn num(&mut self, key: &str, v: f64) -> &mut Self {
        self.fields.push((key.to_string(), Field::Num(v)));
        self
    }

    pub fn text(&mut self, key: &str, v: impl Into<String>) -> &mut Self {
        self.fields.push((key.to_string(), Field::Text(v.into())));
        self
    }

    pub fn list(&mut self, key: &str, v: Vec<f64>) -> &mut Self {
        self.fields.push((key.to_string(), Field::List(v)));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Field> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let width = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                let mut out = String::new();
                for (k, v) in &self.fields {
                    let v = match v {
                        Field::Num(x) => g9(*x),
                        Field::Text(s) => s.clone(),
                        Field::List(xs) if xs.is_empty() => "none".to_string(),
                        Field::List(xs) => xs.iter().map(|x| g9(*x)).collect::<Vec<_>>().join(" "),
                    };
                    out.push_str(&format!("{k:<width$}  {v}\n"));
                }
                out
            }
            Format::Json => {
                let mut fields = Map::new();
                for (k, v) in &self.fields {
                    let v = match v {
                        Field::Num(x) => json!(x),
                        Field::Text(s) => json!(s),
                        Field::List(xs) => json!(xs),
                    };
                    fields.insert(k.clone(), v);
                }
                let mut doc = Map::new();
                doc.insert("meta".into(), meta_json(&self.meta));
                doc.extend(fields);
                let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("finite values");
                s.push('\n');
                s
            }
        }
    }
}

/// Writes to `path`, or to stdout when there is none.
pub fn emit(text: &str, path: Option<&Path>) -> CliResult<()> {
    match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
            }
            fs::write(p, text).map_err(|e| CliError::io(p, e))
        }
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::io("<stdout>", e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_has_header_comment() {
        let t = Table {
            meta: vec![("a".into(), "1".into()), ("c".into(), "0.1,0.2,0.3".into())],
            columns: vec!["a_t".into(), "p".into()],
            rows: vec![vec![0.0, 1.0], vec![0.5, 0.25]],
        };
        assert_eq!(t.render(Format::Csv), "# a=1 c=0.1,0.2,0.3\na_t,p\n0,1\n0.5,0.25\n");
        let v: Value = serde_json::from_str(&t.render(Format::Json)).unwrap();
        assert_eq!(v["meta"]["c"], "0.1,0.2,0.3");
        assert_eq!(v["rows"][1][1], 0.25);
    }

    #[test]
    fn record_text_is_aligned() {
        let mut r = Record::default();
        r.num("I", 2.0).text("axis", "z").list("crossings", vec![]);
        assert_eq!(r.render(Format::Csv), "I          2\naxis       z\ncrossings  none\n");
    }
}
