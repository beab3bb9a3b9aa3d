//! CSV emission and run metadata.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::config::RunConfig;
use crate::error::{Error, Result};

/// 17 significant digits, scientific, lowercase `e`.
pub fn format_num(x: f64) -> String {
    format!("{x:.16e}")
}

/// CSV body with a header line and `\n` line endings.
#[derive(Debug, Clone, PartialEq)]
pub struct Csv {
    text: String,
    columns: usize,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        let mut text = header.join(",");
        text.push('\n');
        Csv { text, columns: header.len() }
    }

    pub fn push_row(&mut self, cells: &[String]) {
        debug_assert_eq!(cells.len(), self.columns);
        self.text.push_str(&cells.join(","));
        self.text.push('\n');
    }

    pub fn push_nums(&mut self, row: &[f64]) {
        let cells: Vec<String> = row.iter().map(|x| format_num(*x)).collect();
        self.push_row(&cells);
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }

    pub fn rows(&self) -> usize {
        self.text.lines().count() - 1
    }
}

/// Agreement and sanity statistics recorded with every output.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct OracleSummary {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub talbot_max_abs_diff: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_value_deviation: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residue_sum_deviation: Option<f64>,
    /// Exact f-mode: max |Talbot − pole-only| trace difference.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub non_pole_contribution_max: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_pole_real_part: Option<f64>,
    /// Sweep rows left out because a mode was absent or incoherent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omitted_rows: Option<usize>,
    /// Sweep points where the pole set could not be computed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failed_points: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMetadata {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config: RunConfig,
    /// `key = value` text that reproduces the run through `--config`.
    pub config_text: String,
    pub duration_s: f64,
    pub method: String,
    pub rows: usize,
    pub oracle: OracleSummary,
    pub warnings: Vec<String>,
}

impl RunMetadata {
    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Io(e.to_string()))
    }
}

/// `<out>.meta.json`
pub fn meta_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_os_string();
    s.push(".meta.json");
    PathBuf::from(s)
}

/// Write the CSV and its metadata sibling.
pub fn write_outputs(out: &Path, csv: &Csv, meta: &RunMetadata) -> Result<()> {
    std::fs::write(out, csv.as_str()).map_err(|e| Error::Io(format!("{}: {e}", out.display())))?;
    let mp = meta_path(out);
    std::fs::write(&mp, meta.to_json()? + "\n").map_err(|e| Error::Io(format!("{}: {e}", mp.display())))?;
    Ok(())
}
