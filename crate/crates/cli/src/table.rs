use std::io::Write;

use serde_json::{json, Map, Value as Json};

use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Text(String),
    Int(u64),
    /// Printed with nine decimals in CSV.
    Fixed(f64),
    /// Printed in scientific notation in CSV.
    Sci(f64),
    Bool(bool),
    Empty,
}

impl Value {
    fn csv(&self) -> String {
        match self {
            Value::Text(s) => s.clone(),
            Value::Int(n) => n.to_string(),
            Value::Fixed(x) => format!("{x:.9}"),
            Value::Sci(x) => format!("{x:.9e}"),
            Value::Bool(b) => b.to_string(),
            Value::Empty => String::new(),
        }
    }

    fn json(&self) -> Json {
        match self {
            Value::Text(s) => json!(s),
            Value::Int(n) => json!(n),
            Value::Fixed(x) | Value::Sci(x) => json!(x),
            Value::Bool(b) => json!(b),
            Value::Empty => Json::Null,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

/// Run metadata attached to JSON output.
#[derive(Debug, Clone, PartialEq)]
pub struct Metadata {
    pub command: String,
    pub seed: u64,
    pub samples: u64,
    pub config_hash: String,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<Vec<u8>, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).map_err(io)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Value::csv)).map_err(io)?;
        }
        w.into_inner().map_err(|e| CliError::Io(e.to_string()))
    }

    pub fn to_json(&self, meta: &Metadata) -> Result<Vec<u8>, CliError> {
        let records: Vec<Json> = self
            .rows
            .iter()
            .map(|row| {
                let m: Map<String, Json> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.to_string(), v.json()))
                    .collect();
                Json::Object(m)
            })
            .collect();
        let doc = json!({
            "metadata": {
                "command": meta.command,
                "seed": meta.seed,
                "samples": meta.samples,
                "version": env!("CARGO_PKG_VERSION"),
                "config_hash": meta.config_hash,
            },
            "records": records,
        });
        let mut out = serde_json::to_vec_pretty(&doc).map_err(|e| CliError::Io(e.to_string()))?;
        out.push(b'\n');
        Ok(out)
    }

    pub fn render(&self, format: Format, meta: &Metadata) -> Result<Vec<u8>, CliError> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(meta),
        }
    }
}

fn io(e: csv::Error) -> CliError {
    CliError::Io(e.to_string())
}

pub fn emit(bytes: &[u8], out: Option<&std::path::Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, bytes)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_has_header_and_fixed_decimals() {
        let mut t = Table::new(vec!["label", "fidelity", "count"]);
        t.push(vec![
            Value::Text("C".into()),
            Value::Fixed(1.0),
            Value::Empty,
        ]);
        let s = String::from_utf8(t.to_csv().unwrap()).unwrap();
        assert_eq!(s, "label,fidelity,count\nC,1.000000000,\n");
    }

    #[test]
    fn json_carries_metadata() {
        let t = Table::new(vec!["x"]);
        let meta = Metadata {
            command: "rates".into(),
            seed: 3,
            samples: 0,
            config_hash: "abc".into(),
        };
        let v: Json = serde_json::from_slice(&t.to_json(&meta).unwrap()).unwrap();
        assert_eq!(v["metadata"]["seed"], 3);
        assert_eq!(v["records"].as_array().unwrap().len(), 0);
    }
}
