//! Plain-text node, index and CSV files.
//!
//! Node files hold one point per line as three whitespace separated numbers
//! with 17 significant digits; lines starting with `#` are comments. Index
//! files hold one 0-based lattice index per line.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::lattice::Point3;

/// Formats a double with 17 significant digits, enough to round-trip.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn format_nodes(points: &[Point3], header: &[String]) -> String {
    let mut out = String::new();
    for h in header {
        let _ = writeln!(out, "# {h}");
    }
    for p in points {
        let _ = writeln!(out, "{} {} {}", fmt_f64(p[0]), fmt_f64(p[1]), fmt_f64(p[2]));
    }
    out
}

pub fn parse_nodes(text: &str) -> Result<Vec<Point3>> {
    let mut points = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                line: line_no + 1,
                message: format!("expected 3 coordinates, found {}", fields.len()),
            });
        }
        let mut p = [0.0; 3];
        for (slot, field) in p.iter_mut().zip(&fields) {
            *slot = field.parse().map_err(|_| Error::Parse {
                line: line_no + 1,
                message: format!("not a number: {field}"),
            })?;
        }
        points.push(p);
    }
    Ok(points)
}

pub fn format_indices(indices: &[usize]) -> String {
    let mut out = String::with_capacity(indices.len() * 6);
    for i in indices {
        let _ = writeln!(out, "{i}");
    }
    out
}

pub fn parse_indices(text: &str) -> Result<Vec<usize>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(no, l)| {
            l.trim().parse().map_err(|_| Error::Parse {
                line: no + 1,
                message: format!("not an index: {}", l.trim()),
            })
        })
        .collect()
}

/// Comma separated table with a single header line.
#[derive(Debug, Clone, Default)]
pub struct Csv {
    out: String,
}

#[derive(Debug, Clone)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        Csv {
            out: format!("{}\n", header.join(",")),
        }
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        let line: Vec<String> = cells
            .into_iter()
            .map(|c| match c {
                Cell::Int(v) => v.to_string(),
                Cell::Float(v) => fmt_f64(v),
                Cell::Text(s) => s,
            })
            .collect();
        self.out.push_str(&line.join(","));
        self.out.push('\n');
    }

    pub fn as_str(&self) -> &str {
        &self.out
    }
}

/// Writes `contents` through a temporary file in the same directory and
/// renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| Error::Io(e.to_string()))?;
    Ok(())
}
