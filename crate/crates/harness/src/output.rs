//! Trace CSVs and summary tables.

use std::path::Path;

use serde::{Deserialize, Serialize};
use vipeg_core::RunResult;

use crate::error::{HarnessError, Result};
use crate::runner::CellResult;

pub const TRACE_HEADER: [&str; 7] = ["iter", "residual", "lambda", "backtracks", "f_calls", "prox_calls", "elapsed_s"];

/// One line of the summary table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub problem: String,
    pub solver: String,
    pub repetition: usize,
    pub iterations: usize,
    pub prox_calls: u64,
    pub f_calls: u64,
    pub wall_time_s: f64,
    pub final_residual: f64,
    pub status: String,
}

impl SummaryRow {
    pub fn from_cell(c: &CellResult) -> Self {
        Self {
            problem: c.problem_id.clone(),
            solver: c.solver_id.clone(),
            repetition: c.repetition,
            iterations: c.result.iterations(),
            prox_calls: c.result.prox_calls,
            f_calls: c.result.f_calls,
            wall_time_s: c.result.wall_time,
            final_residual: c.result.final_residual,
            status: c.result.status.as_str().to_string(),
        }
    }
}

/// Canonical order: problem, then solver, then repetition.
pub fn sort_rows(rows: &mut [SummaryRow]) {
    rows.sort_by(|a, b| (&a.problem, &a.solver, a.repetition).cmp(&(&b.problem, &b.solver, b.repetition)));
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    AlignedText,
}

const SUMMARY_HEADER: [&str; 9] = [
    "problem",
    "solver",
    "repetition",
    "iterations",
    "prox_calls",
    "f_calls",
    "wall_time_s",
    "final_residual",
    "status",
];

fn row_cells(r: &SummaryRow) -> [String; 9] {
    [
        r.problem.clone(),
        r.solver.clone(),
        r.repetition.to_string(),
        r.iterations.to_string(),
        r.prox_calls.to_string(),
        r.f_calls.to_string(),
        format!("{:.6}", r.wall_time_s),
        format!("{:.3e}", r.final_residual),
        r.status.clone(),
    ]
}

/// Render rows (sorted canonically) as CSV or as a padded text table.
pub fn emit_summary_table(rows: &[SummaryRow], format: TableFormat) -> String {
    let mut sorted = rows.to_vec();
    sort_rows(&mut sorted);
    match format {
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &sorted {
                w.serialize(r).expect("in-memory csv write");
            }
            if sorted.is_empty() {
                w.write_record(SUMMARY_HEADER).expect("in-memory csv write");
            }
            String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("utf-8 csv")
        }
        TableFormat::AlignedText => {
            let body: Vec<[String; 9]> = sorted.iter().map(row_cells).collect();
            let mut widths: Vec<usize> = SUMMARY_HEADER.iter().map(|h| h.len()).collect();
            for cells in &body {
                for (w, c) in widths.iter_mut().zip(cells) {
                    *w = (*w).max(c.len());
                }
            }
            let line = |cells: Vec<&str>| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .enumerate()
                    .map(|(i, (c, w))| if i < 2 || i == 8 { format!("{c:<w$}") } else { format!("{c:>w$}") })
                    .collect();
                padded.join("  ").trim_end().to_string()
            };
            let mut out = line(SUMMARY_HEADER.to_vec());
            out.push('\n');
            for cells in &body {
                out.push_str(&line(cells.iter().map(String::as_str).collect()));
                out.push('\n');
            }
            out
        }
    }
}

pub fn parse_summary_csv(text: &str) -> Result<Vec<SummaryRow>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.deserialize()
        .collect::<std::result::Result<Vec<SummaryRow>, _>>()
        .map_err(|e| HarnessError::Csv { path: "<summary>".into(), msg: e.to_string() })
}

/// One parsed trace line.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub iter: usize,
    pub residual: f64,
    pub lambda: f64,
    pub backtracks: usize,
    pub f_calls: u64,
    pub prox_calls: u64,
    pub elapsed_s: f64,
}

fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// Write one row per accepted iteration; floats carry 17 significant digits.
pub fn write_trace_csv(result: &RunResult, path: &Path) -> Result<()> {
    let err = |e: csv::Error| HarnessError::Csv { path: path.to_path_buf(), msg: e.to_string() };
    let mut w = csv::Writer::from_path(path).map_err(err)?;
    w.write_record(TRACE_HEADER).map_err(err)?;
    for rec in &result.trace {
        w.write_record([
            rec.n.to_string(),
            fmt_float(rec.residual),
            fmt_float(rec.lambda),
            rec.backtracks.to_string(),
            rec.f_calls_cum.to_string(),
            rec.prox_calls_cum.to_string(),
            fmt_float(rec.elapsed),
        ])
        .map_err(err)?;
    }
    w.flush().map_err(|e| HarnessError::io(path, e))
}

pub fn read_trace_csv(path: &Path) -> Result<Vec<TraceRow>> {
    let bad = |msg: String| HarnessError::Csv { path: path.to_path_buf(), msg };
    let mut r = csv::Reader::from_path(path).map_err(|e| bad(e.to_string()))?;
    let header = r.headers().map_err(|e| bad(e.to_string()))?.clone();
    if header.iter().collect::<Vec<_>>() != TRACE_HEADER {
        return Err(bad(format!("unexpected header {:?}", header)));
    }
    let mut rows = Vec::new();
    for (k, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| bad(e.to_string()))?;
        let field = |i: usize| rec.get(i).unwrap_or("");
        let num =
            |i: usize| field(i).parse::<f64>().map_err(|_| bad(format!("row {}: bad number '{}'", k + 1, field(i))));
        let int =
            |i: usize| field(i).parse::<u64>().map_err(|_| bad(format!("row {}: bad integer '{}'", k + 1, field(i))));
        rows.push(TraceRow {
            iter: int(0)? as usize,
            residual: num(1)?,
            lambda: num(2)?,
            backtracks: int(3)? as usize,
            f_calls: int(4)?,
            prox_calls: int(5)?,
            elapsed_s: num(6)?,
        });
    }
    Ok(rows)
}

/// File name for a trace: ids with anything but `[A-Za-z0-9.-]` replaced by `_`.
pub fn trace_file_name(problem: &str, solver: &str, repetition: usize) -> String {
    let clean = |s: &str| -> String {
        s.chars().map(|c| if c.is_ascii_alphanumeric() || c == '.' || c == '-' { c } else { '_' }).collect()
    };
    format!("{}__{}__r{repetition}.csv", clean(problem), clean(solver))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(problem: &str, solver: &str) -> SummaryRow {
        SummaryRow {
            problem: problem.into(),
            solver: solver.into(),
            repetition: 0,
            iterations: 12,
            prox_calls: 13,
            f_calls: 14,
            wall_time_s: 0.012345678901234,
            final_residual: 9.87654321e-7,
            status: "converged".into(),
        }
    }

    #[test]
    fn single_row_gives_two_lines() {
        for f in [TableFormat::Csv, TableFormat::AlignedText] {
            let t = emit_summary_table(&[row("p", "s")], f);
            assert_eq!(t.lines().count(), 2);
        }
    }

    #[test]
    fn rows_are_sorted() {
        let rows = vec![row("b", "x"), row("a", "y"), row("a", "x")];
        let t = emit_summary_table(&rows, TableFormat::Csv);
        let back = parse_summary_csv(&t).unwrap();
        let keys: Vec<_> = back.iter().map(|r| (r.problem.as_str(), r.solver.as_str())).collect();
        assert_eq!(keys, vec![("a", "x"), ("a", "y"), ("b", "x")]);
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let mut rows = vec![row("a", "x"), row("c", "z")];
        rows[1].final_residual = 1.0 / 3.0;
        rows[1].wall_time_s = f64::MIN_POSITIVE;
        let back = parse_summary_csv(&emit_summary_table(&rows, TableFormat::Csv)).unwrap();
        assert_eq!(back, rows);
    }

    #[test]
    fn aligned_columns_line_up() {
        let t = emit_summary_table(&[row("short", "s"), row("a-much-longer-id", "s")], TableFormat::AlignedText);
        let lines: Vec<&str> = t.lines().collect();
        let pos: Vec<usize> = lines.iter().map(|l| l.find("converged").unwrap_or(0)).skip(1).collect();
        assert_eq!(pos[0], pos[1]);
        assert_eq!(lines[1].find(" s "), lines[2].find(" s "));
    }

    #[test]
    fn trace_names_are_sanitized() {
        assert_eq!(trace_file_name("sun-10", "IPEG(0.73)", 2), "sun-10__IPEG_0.73___r2.csv");
    }
}
