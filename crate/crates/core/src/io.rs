//! Interchange formats for coincidence matrices and pipeline records.
//!
//! * Ξ text: a header line `k n`, then `n + k` rows of `0`/`1` (spaces and
//!   commas between digits are ignored; `#` starts a comment).
//! * DOT: inputs are boxes labelled `0`, `0'`, `0''`, ...; outputs are
//!   circles labelled `1..n`; one edge per one in the upper triangle of Ξ.
//! * JSON: [`XiDocument`] (schema `stabgraph.xi/1`) and
//!   [`PipelineRecord`](crate::pipeline::PipelineRecord) (schema `stabgraph.record/1`).

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coincidence::{AttachmentReport, CoincidenceError, CoincidenceMatrix};
use crate::gf2::{BitMatrix, BitVector};
use crate::pipeline::{PipelineRecord, RECORD_SCHEMA};

pub const XI_SCHEMA: &str = "stabgraph.xi/1";

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema {found:?}, expected {expected:?}")]
    Schema { found: String, expected: &'static str },
    #[error(transparent)]
    Coincidence(#[from] CoincidenceError),
    #[error("unknown export format {0:?}, expected dot, json or matrix")]
    UnknownFormat(String),
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("").trim();
        (!content.is_empty()).then_some((i + 1, content))
    })
}

pub fn write_xi_text(xi: &CoincidenceMatrix) -> String {
    let mut out = format!("{} {}\n", xi.k(), xi.n());
    for row in xi.xi().row_vectors() {
        let _ = writeln!(out, "{row}");
    }
    out
}

pub fn parse_xi_text(text: &str) -> Result<CoincidenceMatrix, IoError> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or(IoError::Parse {
        line: 1,
        message: "missing header \"k n\"".into(),
    })?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map_err(|e| IoError::Parse {
            line,
            message: format!("bad header: {e}"),
        })?;
    let [k, n] = dims[..] else {
        return Err(IoError::Parse {
            line,
            message: "header must be \"k n\"".into(),
        });
    };
    let size = k + n;
    let mut rows = Vec::with_capacity(size);
    for (line, content) in lines {
        let row: BitVector = content
            .parse()
            .map_err(|e: crate::gf2::Gf2Error| IoError::Parse {
                line,
                message: e.to_string(),
            })?;
        if row.len() != size {
            return Err(IoError::Parse {
                line,
                message: format!("row has {} entries, expected {size}", row.len()),
            });
        }
        if rows.len() == size {
            return Err(IoError::Parse {
                line,
                message: format!("more than {size} rows"),
            });
        }
        rows.push(row);
    }
    if rows.len() != size {
        return Err(IoError::Parse {
            line: text.lines().count(),
            message: format!("found {} rows, expected {size}", rows.len()),
        });
    }
    let xi = BitMatrix::from_rows(size, rows).expect("row lengths checked");
    Ok(CoincidenceMatrix::from_xi(k, xi)?)
}

/// Input vertex label: `0`, `0'`, `0''`, ...
pub fn input_label(i: usize) -> String {
    format!("0{}", "'".repeat(i))
}

pub fn vertex_label(xi: &CoincidenceMatrix, v: usize) -> String {
    if v < xi.k() {
        input_label(v)
    } else {
        (v - xi.k() + 1).to_string()
    }
}

pub fn to_dot(xi: &CoincidenceMatrix) -> String {
    let mut out = String::from("graph coincidence {\n");
    let size = xi.k() + xi.n();
    for v in 0..size {
        let shape = if v < xi.k() { "box" } else { "circle" };
        let _ = writeln!(out, "  v{v} [label=\"{}\", shape={shape}];", vertex_label(xi, v));
    }
    for a in 0..size {
        for b in a + 1..size {
            if xi.xi().get(a, b) {
                let _ = writeln!(out, "  v{a} -- v{b};");
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Plain `0`/`1` rows of Ξ, no header.
pub fn to_matrix_text(xi: &CoincidenceMatrix) -> String {
    let mut out = String::new();
    for row in xi.xi().row_vectors() {
        let _ = writeln!(out, "{row}");
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XiDocument {
    pub schema: String,
    pub k: usize,
    pub n: usize,
    /// Vertex labels in row order: inputs `0, 0', ...` then outputs `1..n`.
    pub labels: Vec<String>,
    /// The full `(n+k) × (n+k)` matrix.
    pub xi: BitMatrix,
    /// Top-right `k × n` block `B†`.
    pub input_block: BitMatrix,
    /// Bottom-right `n × n` block `Γ`.
    pub gamma: BitMatrix,
    pub attachment: AttachmentReport,
}

impl XiDocument {
    pub fn new(xi: &CoincidenceMatrix) -> Self {
        Self {
            schema: XI_SCHEMA.to_string(),
            k: xi.k(),
            n: xi.n(),
            labels: (0..xi.k() + xi.n()).map(|v| vertex_label(xi, v)).collect(),
            xi: xi.xi().clone(),
            input_block: xi.input_block().clone(),
            gamma: xi.gamma().into_adjacency(),
            attachment: xi.report().clone(),
        }
    }

    /// Rebuilds Ξ from the full matrix and checks the blocks agree with it.
    pub fn to_coincidence(&self) -> Result<CoincidenceMatrix, IoError> {
        check_schema(&self.schema, XI_SCHEMA)?;
        let xi = CoincidenceMatrix::from_xi(self.k, self.xi.clone())?;
        if xi.n() != self.n || xi.input_block() != &self.input_block || xi.gamma().adjacency() != &self.gamma
        {
            return Err(CoincidenceError::InvalidXi("blocks disagree with the full matrix".into()).into());
        }
        Ok(xi)
    }
}

fn check_schema(found: &str, expected: &'static str) -> Result<(), IoError> {
    if found != expected {
        return Err(IoError::Schema {
            found: found.to_string(),
            expected,
        });
    }
    Ok(())
}

pub fn xi_to_json(xi: &CoincidenceMatrix) -> String {
    serde_json::to_string_pretty(&XiDocument::new(xi)).expect("serializable")
}

pub fn xi_from_json(text: &str) -> Result<CoincidenceMatrix, IoError> {
    serde_json::from_str::<XiDocument>(text)?.to_coincidence()
}

pub fn record_to_json(record: &PipelineRecord) -> String {
    serde_json::to_string_pretty(record).expect("serializable")
}

pub fn record_from_json(text: &str) -> Result<PipelineRecord, IoError> {
    let record: PipelineRecord = serde_json::from_str(text)?;
    check_schema(&record.schema, RECORD_SCHEMA)?;
    Ok(record)
}

/// Reads Ξ from any supported input: a record or Ξ document (JSON), or Ξ text.
pub fn read_coincidence(text: &str) -> Result<CoincidenceMatrix, IoError> {
    if !text.trim_start().starts_with('{') {
        return parse_xi_text(text);
    }
    let value: serde_json::Value = serde_json::from_str(text)?;
    match value.get("schema").and_then(|s| s.as_str()) {
        Some(RECORD_SCHEMA) => Ok(serde_json::from_value::<PipelineRecord>(value)?.coincidence()?),
        Some(XI_SCHEMA) => serde_json::from_value::<XiDocument>(value)?.to_coincidence(),
        other => Err(IoError::Schema {
            found: other.unwrap_or("").to_string(),
            expected: XI_SCHEMA,
        }),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
    Matrix,
}

impl std::str::FromStr for ExportFormat {
    type Err = IoError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            "matrix" => Ok(ExportFormat::Matrix),
            other => Err(IoError::UnknownFormat(other.to_string())),
        }
    }
}
