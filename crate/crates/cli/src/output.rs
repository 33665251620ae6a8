//! Table emission: CSV with a commented metadata block, JSON with an
//! explicit metadata object, and an optional gnuplot .dat companion.
//! Identical inputs produce byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?}, expected csv or json")),
        }
    }
}

/// One table cell. Non-finite floats serialize as the strings "inf",
/// "-inf" and "nan" in JSON and as bare words in CSV.
#[derive(Debug, Clone)]
pub enum Val {
    UInt(u64),
    Float(f64),
    Str(String),
    Bool(bool),
}

impl Val {
    fn csv(&self) -> String {
        match self {
            Val::UInt(v) => v.to_string(),
            Val::Float(v) => float_repr(*v),
            Val::Str(s) => s.clone(),
            Val::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Val::UInt(v) => serde_json::Value::from(*v),
            Val::Float(v) => {
                if v.is_finite() {
                    serde_json::Value::from(*v)
                } else if v.is_nan() {
                    serde_json::Value::from("nan")
                } else if *v > 0.0 {
                    serde_json::Value::from("inf")
                } else {
                    serde_json::Value::from("-inf")
                }
            }
            Val::Str(s) => serde_json::Value::from(s.clone()),
            Val::Bool(b) => serde_json::Value::from(*b),
        }
    }
}

/// 17 significant digits: round-trip exact for f64.
fn float_repr(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:.16e}")
    }
}

/// Homogeneous table: ordered column names plus rows of cells in the same
/// order. Metadata records the command and every default that shaped the run.
pub struct Table {
    pub metadata: Vec<(String, Val)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Val>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            metadata: Vec::new(),
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: Val) {
        self.metadata.push((key.to_string(), value));
    }

    pub fn push(&mut self, row: Vec<Val>) {
        assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "# {k} = {}", v.csv());
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Val::csv).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    fn render_json(&self) -> String {
        let mut meta = serde_json::Map::new();
        for (k, v) in &self.metadata {
            meta.insert(k.clone(), v.json());
        }
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = serde_json::Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    obj.insert(name.clone(), cell.json());
                }
                serde_json::Value::Object(obj)
            })
            .collect();
        let mut top = serde_json::Map::new();
        top.insert("metadata".into(), serde_json::Value::Object(meta));
        top.insert("rows".into(), serde_json::Value::Array(rows));
        let mut s = serde_json::to_string_pretty(&serde_json::Value::Object(top)).unwrap();
        s.push('\n');
        s
    }

    fn render_gnuplot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {}", self.columns.join(" "));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Val::csv).collect();
            let _ = writeln!(out, "{}", cells.join(" "));
        }
        out
    }

    /// Write to `out` (stdout when None); with `gnuplot` and a file path,
    /// also write a .dat next to it.
    pub fn emit(&self, format: Format, out: Option<&Path>, gnuplot: bool) -> io::Result<()> {
        let text = match format {
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(),
        };
        match out {
            Some(path) => fs::write(path, text)?,
            None => io::stdout().write_all(text.as_bytes())?,
        }
        if gnuplot {
            if let Some(path) = out {
                let mut dat = PathBuf::from(path);
                dat.set_extension("dat");
                fs::write(dat, self.render_gnuplot())?;
            } else {
                io::stdout().write_all(self.render_gnuplot().as_bytes())?;
            }
        }
        Ok(())
    }
}
