//! JSON and CSV encoders. Every float goes through [`number_text`] so both
//! formats carry the same 17 significant digits.

use std::io::Write;

use serde_json::{Map, Number, Value};

use crate::config::OutputFormat;
use crate::CliError;

/// `{:.16e}` rendering; `None` for non-finite values.
pub fn number_text(x: f64) -> Option<String> {
    x.is_finite().then(|| format!("{x:.16e}"))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Bool(bool),
    Text(String),
    Null,
}

impl Cell {
    pub fn opt(x: Option<f64>) -> Self {
        x.map_or(Cell::Null, Cell::Float)
    }

    fn json(&self) -> Value {
        match self {
            Cell::Float(x) => match number_text(*x) {
                Some(s) => Value::Number(s.parse::<Number>().expect("formatted float is a JSON number")),
                None => Value::Null,
            },
            Cell::Int(i) => Value::from(*i),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Null => Value::Null,
        }
    }

    fn csv(&self) -> String {
        match self {
            Cell::Float(x) => number_text(*x).unwrap_or_default(),
            Cell::Int(i) => i.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Null => String::new(),
        }
    }
}

pub type Row = Vec<(&'static str, Cell)>;

/// One command's output. `csv_columns` picks the fields written as CSV;
/// JSON carries every field.
#[derive(Debug, Clone, Default)]
pub struct Document {
    pub config: Row,
    pub results: Vec<Row>,
    pub checks: Vec<Row>,
    pub csv_columns: Vec<&'static str>,
    /// Write `checks` rather than `results` as CSV.
    pub csv_checks: bool,
}

fn object(row: &Row) -> Value {
    Value::Object(
        row.iter()
            .map(|(k, v)| (k.to_string(), v.json()))
            .collect::<Map<_, _>>(),
    )
}

impl Document {
    pub fn to_json(&self) -> String {
        let mut top = Map::new();
        top.insert("config".into(), object(&self.config));
        top.insert(
            "results".into(),
            Value::Array(self.results.iter().map(object).collect()),
        );
        top.insert("checks".into(), Value::Array(self.checks.iter().map(object).collect()));
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("JSON values serialize");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let rows = if self.csv_checks { &self.checks } else { &self.results };
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.csv_columns)
            .map_err(|e| CliError::Io(e.to_string()))?;
        for row in rows {
            let record = self.csv_columns.iter().map(|col| {
                row.iter()
                    .find(|(k, _)| k == col)
                    .map(|(_, v)| v.csv())
                    .unwrap_or_default()
            });
            w.write_record(record).map_err(|e| CliError::Io(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
    }

    pub fn render(&self, format: OutputFormat) -> Result<String, CliError> {
        match format {
            OutputFormat::Json => Ok(self.to_json()),
            OutputFormat::Csv => self.to_csv(),
        }
    }

    pub fn emit(
        &self,
        format: OutputFormat,
        out: Option<&std::path::Path>,
        stdout: &mut dyn Write,
    ) -> Result<(), CliError> {
        let text = self.render(format)?;
        match out {
            Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
            None => stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Io(e.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc() -> Document {
        Document {
            config: vec![("mu", Cell::Float(1.0))],
            results: vec![
                vec![
                    ("x", Cell::Float(-0.1)),
                    ("re", Cell::Float(1.0 / 3.0)),
                    ("im", Cell::Null),
                ],
                vec![
                    ("x", Cell::Float(0.0)),
                    ("re", Cell::Float(f64::NAN)),
                    ("im", Cell::Float(2e-300)),
                ],
            ],
            checks: vec![vec![("name", Cell::Text("a,b".into())), ("passed", Cell::Bool(true))]],
            csv_columns: vec!["x", "re", "im"],
            csv_checks: false,
        }
    }

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [1.0 / 3.0, -6.75, 1e-300, std::f64::consts::PI, -0.0] {
            let s = number_text(x).unwrap();
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
        assert!(number_text(f64::INFINITY).is_none());
    }

    #[test]
    fn json_layout() {
        let v: Value = serde_json::from_str(&doc().to_json()).unwrap();
        assert!(v["config"].is_object());
        assert_eq!(v["results"].as_array().unwrap().len(), 2);
        assert!(v["results"][1]["re"].is_null());
        assert_eq!(v["results"][0]["re"].to_string(), "3.3333333333333331e-1");
        assert_eq!(v["checks"][0]["name"], "a,b");
    }

    #[test]
    fn csv_layout() {
        let text = doc().to_csv().unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "x,re,im");
        assert_eq!(lines[1], "-1.0000000000000001e-1,3.3333333333333331e-1,");
        assert_eq!(lines[2], "0.0000000000000000e0,,2.0000000000000001e-300");
    }
}
