use std::io::Write;
use std::path::PathBuf;

use clap::ValueEnum;
use serde_json::Value;

use diracgate::io::{fmt_float, to_json_string, to_json_value};
use diracgate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        <Format as ValueEnum>::from_str(s, true)
            .map_err(|_| Error::InvalidInput(format!("unknown format '{s}' (json, csv, pretty)")))
    }
}

/// Where rendered output goes.
pub struct Sink {
    pub format: Format,
    pub path: Option<PathBuf>,
}

impl Sink {
    pub fn write(&self, text: &str) -> Result<()> {
        let mut text = text.to_string();
        if !text.ends_with('\n') {
            text.push('\n');
        }
        match &self.path {
            Some(p) => {
                std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display())))
            }
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())?;
                out.flush()?;
                Ok(())
            }
        }
    }

    /// JSON, pretty JSON, or flattened `key,value` CSV of a serializable report.
    pub fn report<T: serde::Serialize>(&self, x: &T) -> Result<()> {
        match self.format {
            Format::Json => self.write(&to_json_string(x, false)),
            Format::Pretty => self.write(&to_json_string(x, true)),
            Format::Csv => self.write(&flatten_csv(&to_json_value(x))),
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Number(n) => n.as_f64().map(fmt_float).unwrap_or_else(|| n.to_string()),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn flatten_into(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(o) => o.iter().for_each(|(k, v)| flatten_into(&join(k), v, out)),
        Value::Array(a) => a
            .iter()
            .enumerate()
            .for_each(|(i, v)| flatten_into(&join(&i.to_string()), v, out)),
        other => out.push((prefix.to_string(), scalar(other))),
    }
}

pub fn flatten_csv(v: &Value) -> String {
    let mut rows = Vec::new();
    flatten_into("", v, &mut rows);
    let mut s = String::from("key,value\n");
    for (k, v) in rows {
        s.push_str(&format!("{k},{v}\n"));
    }
    s
}
