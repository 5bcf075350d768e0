//! Numeric formatting for the emitted files: every cell carries 17
//! significant digits, which round-trips any f64 bit-exactly.

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::{CliError, Result};

/// 17-significant-digit scientific form, e.g. `1.2500000000000000e0`.
pub fn sig17(value: f64) -> String {
    format!("{value:.16e}")
}

/// Line-based writer that funnels everything through [`sig17`].
pub struct CsvWriter {
    path: PathBuf,
    buffer: String,
}

impl CsvWriter {
    pub fn new(path: &Path, header: &str) -> Self {
        Self {
            path: path.to_path_buf(),
            buffer: format!("{header}\n"),
        }
    }

    /// One row: string cells first (already formatted), then numbers.
    pub fn row(&mut self, labels: &[&str], values: &[f64]) {
        let mut cells: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        cells.extend(values.iter().map(|v| sig17(*v)));
        self.buffer.push_str(&cells.join(","));
        self.buffer.push('\n');
    }

    pub fn finish(self) -> Result<()> {
        write_file(&self.path, self.buffer.as_bytes())
    }
}

pub fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent).map_err(|source| CliError::OutputWrite {
            path: path.to_path_buf(),
            source,
        })?;
    }
    let mut file = std::fs::File::create(path).map_err(|source| CliError::OutputWrite {
        path: path.to_path_buf(),
        source,
    })?;
    file.write_all(bytes).map_err(|source| CliError::OutputWrite {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("report types serialize");
    text.push('\n');
    write_file(path, text.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig17_round_trips() {
        for &v in &[
            0.1,
            1.0 / 3.0,
            core::f64::consts::PI,
            -2.2250738585072014e-308,
            6.02214076e23,
        ] {
            let parsed: f64 = sig17(v).parse().unwrap();
            assert_eq!(parsed.to_bits(), v.to_bits(), "{v}");
        }
    }

    #[test]
    fn sig17_is_stable_text() {
        assert_eq!(sig17(0.5), "5.0000000000000000e-1");
        assert_eq!(sig17(1.0), "1.0000000000000000e0");
    }
}
