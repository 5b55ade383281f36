//! Stable JSON and CSV encodings.
//!
//! JSON objects are emitted with sorted keys and complex numbers as
//! `[re, im]`; CSV solution files have the header `x,w_0,…,w_n`.

use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::radial::RadialSolution;

/// Pretty JSON with keys sorted at every level, newline terminated.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    // serde_json::Value keeps objects in a BTreeMap
    let value = serde_json::to_value(value).map_err(|e| Error::InvalidInput(format!("JSON encoding: {e}")))?;
    let mut text =
        serde_json::to_string_pretty(&value).map_err(|e| Error::InvalidInput(format!("JSON encoding: {e}")))?;
    text.push('\n');
    Ok(text)
}

pub fn solution_csv(solution: &RadialSolution) -> String {
    let n = solution.n();
    let mut out = String::from("x");
    for i in 0..=n {
        out.push_str(&format!(",w_{i}"));
    }
    out.push('\n');
    for (j, x) in solution.grid.xs().enumerate() {
        out.push_str(&format!("{x:e}"));
        for i in 0..=n {
            out.push_str(&format!(",{:e}", solution.w[(j, i)]));
        }
        out.push('\n');
    }
    out
}

/// Parses a CSV written by [`solution_csv`] into `(x, rows)`.
pub fn parse_solution_csv(text: &str) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::InvalidInput("empty CSV".into()))?;
    let columns: Vec<&str> = header.split(',').collect();
    if columns.first() != Some(&"x") || columns.len() < 3 {
        return Err(Error::InvalidInput(format!("unexpected CSV header {header:?}")));
    }
    let mut xs = Vec::new();
    let mut rows = Vec::new();
    for (line_no, line) in lines.enumerate() {
        let values = line
            .split(',')
            .map(|v| v.parse::<f64>())
            .collect::<std::result::Result<Vec<f64>, _>>()
            .map_err(|e| Error::InvalidInput(format!("CSV line {}: {e}", line_no + 2)))?;
        if values.len() != columns.len() {
            return Err(Error::InvalidInput(format!("CSV line {} has {} fields", line_no + 2, values.len())));
        }
        xs.push(values[0]);
        rows.push(values[1..].to_vec());
    }
    Ok((xs, rows))
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))
}
