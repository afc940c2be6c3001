// SPDX-License-Identifier: MIT OR Apache-2.0

use std::fs::File;
use std::io::{self, Read, Write};
use std::path::Path;

use msfpop::Series;

use crate::error::{CliError, CliResult};

fn open(path: &Path) -> CliResult<Box<dyn Read>> {
    if path.as_os_str() == "-" {
        return Ok(Box::new(io::stdin()));
    }
    File::open(path)
        .map(|f| Box::new(f) as Box<dyn Read>)
        .map_err(|e| CliError::Data(format!("cannot read {}: {e}", path.display())))
}

fn number(field: &str, line: u64, what: &str) -> CliResult<f64> {
    match field.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(CliError::Data(format!(
            "line {line}: {what} '{field}' is not a finite number"
        ))),
    }
}

/// One observation per row, with an optional weight in a second column.
/// Lines starting with `#` are skipped, so a `#`-prefixed header is allowed.
pub fn read_series(path: &Path) -> CliResult<Series<f64>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(open(path)?);
    let mut values = Vec::new();
    let mut weights = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
        let line = record.position().map_or(0, |p| p.line());
        match record.len() {
            1 | 2 => {}
            k => {
                return Err(CliError::Data(format!(
                    "line {line}: expected 1 or 2 columns, found {k}"
                )))
            }
        }
        values.push(number(&record[0], line, "value")?);
        let w = match record.get(1) {
            Some(field) => number(field, line, "weight")?,
            None => 1.0,
        };
        if w <= 0.0 {
            return Err(CliError::Data(format!("line {line}: weight must be positive, got {w}")));
        }
        weights.push(w);
    }
    if values.is_empty() {
        return Err(CliError::Data(format!("{}: no observations", path.display())));
    }
    Series::with_weights(values, weights).map_err(CliError::data)
}

/// Writes to `path`, or to standard output when no path is given.
pub fn write_output(path: Option<&Path>, bytes: &[u8]) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| CliError::Data(format!("cannot write {}: {e}", p.display()))),
        None => io::stdout()
            .lock()
            .write_all(bytes)
            .map_err(|e| CliError::Data(format!("cannot write output: {e}"))),
    }
}

pub fn read_text(path: &Path) -> CliResult<String> {
    let mut s = String::new();
    open(path)?
        .read_to_string(&mut s)
        .map_err(|e| CliError::Data(format!("cannot read {}: {e}", path.display())))?;
    Ok(s)
}
