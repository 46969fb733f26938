//! Deterministic CSV tables with `#` header lines, and their reader.
//!
//! Layout:
//!
//! ```text
//! # schema: dirac1d-scan/1
//! # <key>: <value>          (any number of metadata lines)
//! # columns: a,b,c
//! 1.00000000000e0,even,...
//! ```
//!
//! Reals are written with 12 significant digits, lines end in LF.

use std::fmt::Write as _;

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Schema {
    Spectrum,
    Scan,
    Wavefunction,
    Compare,
}

impl Schema {
    pub fn name(self) -> &'static str {
        match self {
            Schema::Spectrum => "dirac1d-spectrum",
            Schema::Scan => "dirac1d-scan",
            Schema::Wavefunction => "dirac1d-wavefunction",
            Schema::Compare => "dirac1d-compare",
        }
    }

    fn from_name(name: &str) -> Option<Schema> {
        [Schema::Spectrum, Schema::Scan, Schema::Wavefunction, Schema::Compare]
            .into_iter()
            .find(|s| s.name() == name)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Real(f64),
    Int(i64),
    Text(String),
    Empty,
}

impl Cell {
    pub fn opt(x: Option<f64>) -> Cell {
        x.map_or(Cell::Empty, Cell::Real)
    }
}

/// Format a real with 12 significant digits.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.11e}")
}

/// Round a real to what [`fmt_real`] keeps, so values survive a round trip.
pub fn quantize(x: f64) -> f64 {
    fmt_real(x).parse().unwrap_or(x)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetaEntry {
    pub key: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub schema: Schema,
    pub version: u32,
    pub meta: Vec<MetaEntry>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(schema: Schema, columns: &[&str]) -> Self {
        Table {
            schema,
            version: SCHEMA_VERSION,
            meta: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl Into<String>) {
        self.meta.push(MetaEntry {
            key: key.to_string(),
            value: value.into(),
        });
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# schema: {}/{}", self.schema.name(), self.version);
        for m in &self.meta {
            let _ = writeln!(out, "# {}: {}", m.key, m.value.replace('\n', " "));
        }
        let _ = writeln!(out, "# columns: {}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Real(x) => fmt_real(*x),
                    Cell::Int(i) => i.to_string(),
                    Cell::Text(s) => s.replace([',', '\n'], ";"),
                    Cell::Empty => String::new(),
                })
                .collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("tables always serialize");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TableError {
    #[error("missing schema line")]
    MissingSchema,
    #[error("unknown schema '{0}'")]
    UnknownSchema(String),
    #[error("unsupported schema version {0}")]
    UnsupportedVersion(String),
    #[error("missing columns line")]
    MissingColumns,
    #[error("line {line}: expected {expected} fields, found {found}")]
    FieldCount { line: usize, expected: usize, found: usize },
    #[error("line {line}: malformed header")]
    Header { line: usize },
    #[error("line {line}, column '{column}': cannot parse '{value}'")]
    Value { line: usize, column: String, value: String },
    #[error("expected a {expected} table, found {found}")]
    WrongSchema { expected: &'static str, found: &'static str },
}

/// A parsed CSV table; cells stay as text until a typed reader takes them.
#[derive(Debug, Clone, PartialEq)]
pub struct RawTable {
    pub schema: Schema,
    pub meta: Vec<MetaEntry>,
    pub columns: Vec<String>,
    /// (line number, fields)
    pub rows: Vec<(usize, Vec<String>)>,
}

impl RawTable {
    pub fn parse(text: &str) -> Result<RawTable, TableError> {
        let mut lines = text.lines().enumerate();
        let (_, first) = lines.next().ok_or(TableError::MissingSchema)?;
        let spec = first.strip_prefix("# schema: ").ok_or(TableError::MissingSchema)?;
        let (name, version) = spec
            .rsplit_once('/')
            .ok_or_else(|| TableError::UnknownSchema(spec.to_string()))?;
        let schema = Schema::from_name(name).ok_or_else(|| TableError::UnknownSchema(name.to_string()))?;
        if version.parse::<u32>().ok() != Some(SCHEMA_VERSION) {
            return Err(TableError::UnsupportedVersion(version.to_string()));
        }
        let mut meta = Vec::new();
        let mut columns: Option<Vec<String>> = None;
        let mut rows = Vec::new();
        for (i, line) in lines {
            let line_no = i + 1;
            if let Some(h) = line.strip_prefix("# ") {
                if columns.is_some() {
                    return Err(TableError::Header { line: line_no });
                }
                let (k, v) = h.split_once(": ").ok_or(TableError::Header { line: line_no })?;
                if k == "columns" {
                    columns = Some(v.split(',').map(str::to_string).collect());
                } else {
                    meta.push(MetaEntry {
                        key: k.to_string(),
                        value: v.to_string(),
                    });
                }
                continue;
            }
            let cols = columns.as_ref().ok_or(TableError::MissingColumns)?;
            let fields: Vec<String> = line.split(',').map(str::to_string).collect();
            if fields.len() != cols.len() {
                return Err(TableError::FieldCount {
                    line: line_no,
                    expected: cols.len(),
                    found: fields.len(),
                });
            }
            rows.push((line_no, fields));
        }
        Ok(RawTable {
            schema,
            meta,
            columns: columns.ok_or(TableError::MissingColumns)?,
            rows,
        })
    }

    pub fn expect(self, schema: Schema) -> Result<RawTable, TableError> {
        if self.schema != schema {
            return Err(TableError::WrongSchema {
                expected: schema.name(),
                found: self.schema.name(),
            });
        }
        Ok(self)
    }

    pub fn meta_value(&self, key: &str) -> Option<&str> {
        self.meta.iter().find(|m| m.key == key).map(|m| m.value.as_str())
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }
}
