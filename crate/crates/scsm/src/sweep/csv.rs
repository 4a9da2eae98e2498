//! CSV output with a fixed schema, plus a companion plotting script.
//!
//! Columns: `curve_label,swept_value,se_bound_total,se_mc_total,
//! se_mc_stderr,seed`. Floating-point values carry 9 significant digits;
//! every row is newline-terminated and the file is UTF-8 with `.` as the
//! decimal separator. Only deterministic fields go into the file so that
//! identical runs produce identical bytes.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::sweep::ResultRow;

pub const CSV_HEADER: &str = "curve_label,swept_value,se_bound_total,se_mc_total,se_mc_stderr,seed";

/// One parsed CSV line.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub curve_label: String,
    pub swept_value: f64,
    pub se_bound_total: f64,
    pub se_mc_total: f64,
    pub se_mc_stderr: f64,
    pub seed: u64,
}

fn sig9(v: f64) -> String {
    if v.is_nan() {
        "NaN".to_string()
    } else {
        format!("{v:.8e}")
    }
}

fn format_row(row: &ResultRow) -> String {
    format!(
        "{},{},{},{},{},{}\n",
        row.curve_label,
        sig9(row.swept_value),
        sig9(row.se_bound_total),
        sig9(row.se_mc_total),
        sig9(row.se_mc_stderr),
        row.seed
    )
}

/// Write rows to `path` and a plotting script next to it. Refuses to create
/// a file for an empty row set.
pub fn emit_csv(rows: &[ResultRow], path: &Path) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::EmptyRows);
    }
    let mut text = String::with_capacity(64 * (rows.len() + 1));
    text.push_str(CSV_HEADER);
    text.push('\n');
    for row in rows {
        text.push_str(&format_row(row));
    }
    fs::write(path, text)?;
    fs::write(plot_script_path(path), plot_script(path))?;
    Ok(())
}

/// Path of the plotting script written next to a CSV.
pub fn plot_script_path(csv_path: &Path) -> PathBuf {
    csv_path.with_extension("plot.py")
}

/// Parse a file previously written by [`emit_csv`].
pub fn parse_csv(path: &Path) -> Result<Vec<CsvRow>> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == CSV_HEADER => {}
        other => {
            return Err(Error::ConfigFile {
                path: path.display().to_string(),
                message: format!("unexpected CSV header {other:?}"),
            })
        }
    }
    let field_err = |line: usize, what: &str| Error::ConfigFile {
        path: path.display().to_string(),
        message: format!("line {line}: {what}"),
    };
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let parts: Vec<&str> = line.split(',').collect();
        if parts.len() != 6 {
            return Err(field_err(i + 2, "expected 6 fields"));
        }
        let num = |s: &str, what: &str| -> Result<f64> {
            s.parse::<f64>()
                .map_err(|_| field_err(i + 2, &format!("bad {what} `{s}`")))
        };
        rows.push(CsvRow {
            curve_label: parts[0].to_string(),
            swept_value: num(parts[1], "swept_value")?,
            se_bound_total: num(parts[2], "se_bound_total")?,
            se_mc_total: num(parts[3], "se_mc_total")?,
            se_mc_stderr: num(parts[4], "se_mc_stderr")?,
            seed: parts[5]
                .parse::<u64>()
                .map_err(|_| field_err(i + 2, &format!("bad seed `{}`", parts[5])))?,
        });
    }
    Ok(rows)
}

fn plot_script(csv_path: &Path) -> String {
    let csv_name = csv_path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "sweep.csv".to_string());
    format!(
        r#"#!/usr/bin/env python3
"""Plot `{csv}`: spectral-efficiency bound and Monte Carlo estimate per curve.

Columns used: curve_label, swept_value, se_bound_total, se_mc_total,
se_mc_stderr.
"""
import csv
import math
from collections import defaultdict

import matplotlib.pyplot as plt

curves = defaultdict(list)
with open("{csv}", newline="") as fh:
    for row in csv.DictReader(fh):
        curves[row["curve_label"]].append(
            (
                float(row["swept_value"]),
                float(row["se_bound_total"]),
                float(row["se_mc_total"]),
                float(row["se_mc_stderr"]),
            )
        )

fig, ax = plt.subplots()
for label, points in curves.items():
    points.sort()
    x = [p[0] for p in points]
    bound = [p[1] for p in points]
    mc = [p[2] for p in points]
    err = [p[3] for p in points]
    line, = ax.plot(x, bound, marker="o", label=f"{{label}} bound")
    if not all(math.isnan(v) for v in mc):
        ax.errorbar(
            x, mc, yerr=[3 * e for e in err], fmt="x--",
            color=line.get_color(), label=f"{{label}} monte carlo",
        )

ax.set_xlabel("swept_value")
ax.set_ylabel("spectral efficiency [bits/s/Hz]")
ax.legend()
ax.grid(True, alpha=0.3)
fig.tight_layout()
out = "{stem}.png"
fig.savefig(out, dpi=150)
print(f"wrote {{out}}")
"#,
        csv = csv_name,
        stem = Path::new(&csv_name)
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "sweep".to_string()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(label: &str, x: f64, seed: u64) -> ResultRow {
        ResultRow {
            curve_label: label.to_string(),
            swept_value: x,
            se_bound_total: 12.345678901234,
            se_mc_total: 12.5,
            se_mc_stderr: 0.25,
            sinr_closed_form: 3.0,
            per_user: vec![],
            runtime_ms: 17,
            seed,
        }
    }

    #[test]
    fn header_plus_one_line_per_row() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        let rows: Vec<ResultRow> = (0..9).map(|i| row("K=5", i as f64, i as u64)).collect();
        emit_csv(&rows, &path).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 10);
        assert!(text.ends_with('\n'));
        assert!(plot_script_path(&path).exists());
        let script = fs::read_to_string(plot_script_path(&path)).unwrap();
        assert!(script.contains("se_mc_stderr"));
        assert!(script.contains("out.csv"));
    }

    #[test]
    fn round_trip_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        let rows = vec![row("K=5", 32.0, 7), row("K=10", 64.0, 8)];
        emit_csv(&rows, &path).unwrap();
        let parsed = parse_csv(&path).unwrap();
        assert_eq!(parsed.len(), 2);
        // Re-emitting the parsed rows reproduces the file byte for byte.
        let reparsed_rows: Vec<ResultRow> = parsed
            .iter()
            .map(|p| ResultRow {
                curve_label: p.curve_label.clone(),
                swept_value: p.swept_value,
                se_bound_total: p.se_bound_total,
                se_mc_total: p.se_mc_total,
                se_mc_stderr: p.se_mc_stderr,
                sinr_closed_form: 0.0,
                per_user: vec![],
                runtime_ms: 0,
                seed: p.seed,
            })
            .collect();
        let path2 = dir.path().join("out2.csv");
        emit_csv(&reparsed_rows, &path2).unwrap();
        assert_eq!(fs::read(&path).unwrap(), fs::read(&path2).unwrap());
    }

    #[test]
    fn nan_mc_columns_survive_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bound.csv");
        let mut r = row("all", 128.0, 3);
        r.se_mc_total = f64::NAN;
        r.se_mc_stderr = f64::NAN;
        emit_csv(&[r], &path).unwrap();
        let parsed = parse_csv(&path).unwrap();
        assert!(parsed[0].se_mc_total.is_nan());
    }

    #[test]
    fn empty_rows_error_and_no_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("none.csv");
        assert!(matches!(emit_csv(&[], &path), Err(Error::EmptyRows)));
        assert!(!path.exists());
    }

    #[test]
    fn nine_significant_digits() {
        assert_eq!(sig9(12.345678901234), "1.23456789e1");
        assert_eq!(sig9(0.00057065), "5.70650000e-4");
        assert_eq!(sig9(f64::NAN), "NaN");
    }
}
