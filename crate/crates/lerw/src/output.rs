//! CSV tables and the JSON run summary.
//!
//! Data files are CSV with a header row, UTF-8, LF line endings, one row per
//! sample or grid point. Floats are printed with Rust's shortest round-trip
//! formatting, so equal runs produce byte-identical files.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::runner::RunResult;

/// An in-memory table; `name` becomes `<name>.csv` in the output directory.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, header: &[&str]) -> Self {
        Table {
            name: name.to_string(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Shortest round-trip decimal representation.
pub fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

/// Coordinate column names: `x`, `y`, `z` up to three dimensions, `x0..` above.
pub fn coord_names(dim: usize) -> Vec<String> {
    match dim {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        d => (0..d).map(|i| format!("x{i}")).collect(),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    let mut file = fs::File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    file.write_all(contents.as_bytes()).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Write every table as CSV plus `summary.json` into `dir` (created if
/// absent). Returns the written paths, tables first.
pub fn write_outputs(result: &RunResult, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut written = Vec::new();
    for table in &result.tables {
        let path = dir.join(format!("{}.csv", table.name));
        write_file(&path, &table.to_csv_string())?;
        written.push(path);
    }
    let summary_path = dir.join("summary.json");
    let mut text = serde_json::to_string_pretty(&result.summary)?;
    text.push('\n');
    write_file(&summary_path, &text)?;
    written.push(summary_path);
    Ok(written)
}
