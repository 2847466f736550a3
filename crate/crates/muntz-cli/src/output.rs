//! Deterministic CSV/JSON output writing.
//!
//! Identical invocations must produce byte-identical files: floats use
//! Rust's shortest round-trip formatting in CSV/JSON rows, and the matrix
//! dump prints 17 significant digits so a reload reproduces every f64
//! exactly.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// One output table: column names plus rows of cells.
pub struct Table {
    pub columns: &'static [&'static str],
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Clone)]
pub enum Cell {
    Int(u64),
    Float(f64),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            // +0.0 and -0.0 both print as 0.
            Cell::Float(v) => format!("{}", v + 0.0),
        }
    }

    fn json(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => {
                if v.is_finite() {
                    format!("{}", v + 0.0)
                } else {
                    "null".to_string()
                }
            }
        }
    }
}

impl Table {
    pub fn render(&self, format: Format, command: &str, config_json: &str) -> String {
        match format {
            Format::Csv => {
                let mut out = String::new();
                out.push_str(&self.columns.join(","));
                out.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
                out
            }
            Format::Json => {
                let mut out = String::new();
                out.push_str(&format!(
                    "{{\"schema\":{SCHEMA_VERSION},\"command\":\"{command}\",\"config\":{config_json},\"rows\":["
                ));
                for (i, row) in self.rows.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push('{');
                    for (j, (name, cell)) in self.columns.iter().zip(row).enumerate() {
                        if j > 0 {
                            out.push(',');
                        }
                        out.push_str(&format!("\"{name}\":{}", cell.json()));
                    }
                    out.push('}');
                }
                out.push_str("]}\n");
                out
            }
        }
    }
}

/// Resolves the output destination: relative `--out` paths land under
/// `MUNTZ_OUT_DIR` when that variable is set; no `--out` means stdout.
pub fn write_output(out: &Option<PathBuf>, content: &str) -> std::io::Result<()> {
    match out {
        None => std::io::stdout().write_all(content.as_bytes()),
        Some(path) => {
            let resolved = if path.is_relative() {
                match std::env::var_os("MUNTZ_OUT_DIR") {
                    Some(dir) => PathBuf::from(dir).join(path),
                    None => path.clone(),
                }
            } else {
                path.clone()
            };
            if let Some(parent) = resolved.parent() {
                if !parent.as_os_str().is_empty() {
                    fs::create_dir_all(parent)?;
                }
            }
            fs::write(resolved, content)
        }
    }
}

/// 17 significant digits: parses back to the identical f64.
pub fn float17(v: f64) -> String {
    format!("{v:.16e}")
}
