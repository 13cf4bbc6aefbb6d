//! CSV datasets: writing sweep results, reading them back and comparing two
//! of them column by column.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::sweep::SweepResult;

/// Cell written in place of every quantity of a failed row.
pub const ERROR_SENTINEL: &str = "ERROR";

pub fn version_line() -> String {
    format!("# ring-thermo v{}", env!("CARGO_PKG_VERSION"))
}

/// Scientific notation with 17 significant digits, which round-trips.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

/// Renders the CSV text of a result.
pub fn render_csv(result: &SweepResult) -> String {
    let mut out = String::new();
    out.push_str(&version_line());
    out.push('\n');
    for line in &result.metadata {
        out.push_str("# ");
        out.push_str(line);
        out.push('\n');
    }
    let mut header = vec!["strength", "grid"];
    header.extend(result.quantities.iter().map(|q| q.column()));
    out.push_str(&header.join(","));
    out.push('\n');
    for row in &result.rows {
        let mut cells = vec![format_value(row.strength), format_value(row.grid)];
        match &row.values {
            Ok(values) => cells.extend(values.iter().map(|&v| format_value(v))),
            Err(_) => cells.extend(result.quantities.iter().map(|_| ERROR_SENTINEL.to_string())),
        }
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn emit_csv(result: &SweepResult, path: &Path) -> Result<()> {
    fs::write(path, render_csv(result)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// A dataset read back from disk. `None` cells held the error sentinel.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub path: PathBuf,
    pub metadata: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl Dataset {
    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(path, &text)
    }

    pub fn parse(path: &Path, text: &str) -> Result<Self> {
        let csv_err = |message: String| Error::Csv {
            path: path.to_path_buf(),
            message,
        };
        let metadata = text
            .lines()
            .take_while(|l| l.starts_with('#'))
            .map(|l| l.trim_start_matches('#').trim().to_string())
            .collect();
        let mut reader = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        let columns: Vec<String> = reader
            .headers()
            .map_err(|e| csv_err(e.to_string()))?
            .iter()
            .map(str::to_string)
            .collect();
        if columns.len() < 2 || columns[0] != "strength" || columns[1] != "grid" {
            return Err(csv_err(format!("unexpected header {columns:?}")));
        }
        let mut rows = Vec::new();
        for (i, record) in reader.records().enumerate() {
            let record = record.map_err(|e| csv_err(e.to_string()))?;
            let row = record
                .iter()
                .map(|cell| match cell {
                    ERROR_SENTINEL => Ok(None),
                    _ => cell
                        .parse::<f64>()
                        .map(Some)
                        .map_err(|e| csv_err(format!("row {}: {cell:?}: {e}", i + 1))),
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Ok(Self {
            path: path.to_path_buf(),
            metadata,
            columns,
            rows,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColumnDeviation {
    pub column: String,
    pub max_abs: f64,
    pub max_rel: f64,
    /// Cells outside `atol + rtol·|b|`, error sentinels included.
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareReport {
    pub rtol: f64,
    pub atol: f64,
    pub rows: usize,
    pub columns: Vec<ColumnDeviation>,
}

impl CompareReport {
    pub fn passed(&self) -> bool {
        self.columns.iter().all(|c| c.violations == 0)
    }
}

impl fmt::Display for CompareReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rows={} rtol={:e} atol={:e}", self.rows, self.rtol, self.atol)?;
        for c in &self.columns {
            writeln!(
                f,
                "{:<10} max_abs={:.3e} max_rel={:.3e} violations={}",
                c.column, c.max_abs, c.max_rel, c.violations
            )?;
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

pub fn compare(a: &Dataset, b: &Dataset, rtol: f64, atol: f64) -> Result<CompareReport> {
    if a.columns != b.columns {
        return Err(Error::Schema(format!("columns {:?} vs {:?}", a.columns, b.columns)));
    }
    if a.rows.len() != b.rows.len() {
        return Err(Error::Schema(format!("{} rows vs {} rows", a.rows.len(), b.rows.len())));
    }
    let mut columns: Vec<ColumnDeviation> = a
        .columns
        .iter()
        .map(|c| ColumnDeviation {
            column: c.clone(),
            max_abs: 0.0,
            max_rel: 0.0,
            violations: 0,
        })
        .collect();
    for (ra, rb) in a.rows.iter().zip(&b.rows) {
        if ra.len() != columns.len() || rb.len() != columns.len() {
            return Err(Error::Schema("ragged row".into()));
        }
        for ((col, x), y) in columns.iter_mut().zip(ra).zip(rb) {
            match (x, y) {
                (Some(x), Some(y)) => {
                    let d = (x - y).abs();
                    col.max_abs = col.max_abs.max(d);
                    if d > 0.0 {
                        col.max_rel = col.max_rel.max(d / y.abs());
                    }
                    if d.is_nan() || d > atol + rtol * y.abs() {
                        col.violations += 1;
                    }
                }
                _ => col.violations += 1,
            }
        }
    }
    Ok(CompareReport {
        rtol,
        atol,
        rows: a.rows.len(),
        columns,
    })
}

/// Reads both files and compares them.
pub fn compare_datasets(a: &Path, b: &Path, rtol: f64, atol: f64) -> Result<CompareReport> {
    compare(&Dataset::read(a)?, &Dataset::read(b)?, rtol, atol)
}
