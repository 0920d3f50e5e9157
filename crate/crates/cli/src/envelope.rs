//! Output envelope shared by every subcommand.
//!
//! JSON layout:
//!
//! ```text
//! { "metadata": { "command", "parameters", "version", "seed"?, "notes"? },
//!   "columns": [..], "rows": [[..], ..] }
//! ```
//!
//! CSV layout: metadata as `# key: value` comment lines, then a header row and
//! one line per row. Comma separated, `.` decimal point, LF line endings.

use std::fmt;
use std::io::{self, Write};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Bool(bool),
    Int(i64),
    Num(f64),
    Text(String),
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Bool(b) => write!(f, "{b}"),
            Cell::Int(i) => write!(f, "{i}"),
            // Debug gives the shortest round-trip form and switches to
            // exponent notation for very large or small magnitudes
            Cell::Num(x) => write!(f, "{x:?}"),
            Cell::Text(s) => f.write_str(s),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub command: String,
    pub parameters: serde_json::Value,
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub metadata: Metadata,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Envelope {
    pub fn new(command: &str, parameters: serde_json::Value, columns: &[&str]) -> Self {
        Self {
            metadata: Metadata {
                command: command.to_owned(),
                parameters,
                version: env!("CARGO_PKG_VERSION").to_owned(),
                seed: None,
                notes: Vec::new(),
            },
            columns: columns.iter().map(|c| (*c).to_owned()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.metadata.seed = Some(seed);
        self
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.metadata.notes.push(note.into());
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Index of a column by name.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn write<W: Write>(&self, format: Format, out: &mut W) -> io::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, self)?;
                writeln!(out)
            }
            Format::Csv => self.write_csv(out),
        }
    }

    fn write_csv<W: Write>(&self, out: &mut W) -> io::Result<()> {
        let m = &self.metadata;
        writeln!(out, "# command: {}", m.command)?;
        writeln!(out, "# version: {}", m.version)?;
        if let Some(seed) = m.seed {
            writeln!(out, "# seed: {seed}")?;
        }
        writeln!(out, "# parameters: {}", m.parameters)?;
        for note in &m.notes {
            writeln!(out, "# note: {note}")?;
        }
        writeln!(out, "{}", self.columns.join(","))?;
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    out.write_all(b",")?;
                }
                write!(out, "{cell}")?;
            }
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}
