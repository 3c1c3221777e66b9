//! Deterministic table and number formatting.
//!
//! Data files must be byte-identical across identical invocations, so no
//! timestamps or locale-dependent formatting appear here. Numbers print in
//! Rust's shortest round-trip form by default; `--precision N` switches to
//! scientific notation with N fractional digits.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy)]
pub struct NumberFormat {
    pub precision: Option<usize>,
}

impl NumberFormat {
    pub fn fmt(&self, v: f64) -> String {
        match self.precision {
            None => format!("{v}"),
            Some(n) => format!("{v:.n$e}"),
        }
    }
}

/// A comma-separated table with one header row and optional leading
/// comment lines.
pub struct Table {
    pub comments: Vec<String>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Table {
        Table {
            comments: Vec::new(),
            columns,
            rows: Vec::new(),
        }
    }

    pub fn comment(mut self, line: impl Into<String>) -> Table {
        self.comments.push(line.into());
        self
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, fmt: NumberFormat) -> String {
        let mut out = String::new();
        for c in &self.comments {
            out.push_str("# ");
            out.push_str(c);
            out.push('\n');
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| fmt.fmt(*v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// Write to `--out` when given, stdout otherwise.
pub fn emit(out: &Option<PathBuf>, text: &str) -> io::Result<()> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

pub fn write_file(path: &Path, text: &str) -> io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(text.as_bytes())?;
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_is_deterministic_and_headed() {
        let mut t = Table::new(vec!["a", "b"]).comment("tool: test");
        t.push(vec![1.0, 0.25]);
        t.push(vec![1e-9, 3.5]);
        let s = t.render(NumberFormat { precision: None });
        assert_eq!(s, "# tool: test\na,b\n1,0.25\n0.000000001,3.5\n");
        let s2 = t.render(NumberFormat { precision: Some(3) });
        assert!(s2.contains("1.000e0,2.500e-1"));
    }
}
