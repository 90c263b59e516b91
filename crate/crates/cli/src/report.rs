//! Report rendering: the verify table and the CSV writers.
//!
//! Everything here is deterministic: floats are written in Rust's
//! shortest round-trip form inside CSV files and in fixed scientific
//! notation inside tables, rows follow input order, and no timestamps or
//! absolute paths appear in any output.

use std::path::{Path, PathBuf};

use fuzzpettis_core::integral::ResidualReport;
use fuzzpettis_core::{ConvexBody, FuzzyNumber};

use crate::error::{CliError, Result};

/// Outcome of one named verification check.
#[derive(Debug, Clone)]
pub struct CheckRow {
    pub name: &'static str,
    /// `pass`, `fail`, or a `skipped (…)` explanation.
    pub status: String,
    pub residual: f64,
    pub bound: f64,
}

impl CheckRow {
    pub fn new(name: &'static str, residual: f64, bound: f64) -> Self {
        let status = if residual <= bound { "pass" } else { "fail" };
        Self { name, status: String::from(status), residual, bound }
    }

    pub fn flag(name: &'static str, ok: bool, bound: f64) -> Self {
        Self {
            name,
            status: String::from(if ok { "pass" } else { "fail" }),
            residual: if ok { 0.0 } else { 1.0 },
            bound,
        }
    }

    pub fn skipped(name: &'static str, why: &str) -> Self {
        Self { name, status: format!("skipped ({why})"), residual: 0.0, bound: 0.0 }
    }

    pub fn passed(&self) -> bool {
        self.status != "fail"
    }
}

/// Renders the fixed-width verify table.
pub fn render_table(rows: &[CheckRow]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<34} {:<10} {:>13} {:>13}\n",
        "check", "status", "max residual", "bound"
    ));
    out.push_str(&format!("{}\n", "-".repeat(73)));
    for row in rows {
        if row.status.starts_with("skipped") {
            out.push_str(&format!("{:<34} {}\n", row.name, row.status));
        } else {
            out.push_str(&format!(
                "{:<34} {:<10} {:>13.3e} {:>13.3e}\n",
                row.name, row.status, row.residual, row.bound
            ));
        }
    }
    out
}

/// Writes the verify rows as CSV: `check,status,residual,bound`.
pub fn write_report_csv(path: &Path, rows: &[CheckRow]) -> Result<()> {
    let mut w = writer(path)?;
    put(&mut w, path, &["check", "status", "residual", "bound"])?;
    for row in rows {
        put(
            &mut w,
            path,
            &[
                row.name.to_string(),
                row.status.clone(),
                row.residual.to_string(),
                row.bound.to_string(),
            ],
        )?;
    }
    finish(w, path)
}

/// Writes a level family as CSV: `level,vertex,x0,…,x{d-1}` (one row per
/// vertex, levels ascending, vertices in stored order).
pub fn write_levels_csv(path: &Path, value: &FuzzyNumber) -> Result<()> {
    let mut w = writer(path)?;
    let mut header = vec![String::from("level"), String::from("vertex")];
    header.extend((0..value.dims()).map(|i| format!("x{i}")));
    put(&mut w, path, &header)?;
    for (&level, body) in value.levels().iter().zip(value.bodies()) {
        for (vi, vertex) in body.vertices().iter().enumerate() {
            let mut row = vec![level.to_string(), vi.to_string()];
            row.extend(vertex.iter().map(|c| c.to_string()));
            put(&mut w, path, &row)?;
        }
    }
    finish(w, path)
}

/// Writes a residual report as CSV: `level,direction,residual`, one row
/// per stored level × grid direction.
pub fn write_residuals_csv(path: &Path, report: &ResidualReport) -> Result<()> {
    let mut w = writer(path)?;
    put(&mut w, path, &["level", "direction", "residual"])?;
    for row in &report.rows {
        put(
            &mut w,
            path,
            &[row.level.to_string(), row.direction.to_string(), row.residual.to_string()],
        )?;
    }
    finish(w, path)
}

/// Writes one CSV row per atom: `atom,x0,…,x{d-1}`.
pub fn write_selection_csv(path: &Path, atom_ids: &[String], points: &[Vec<f64>]) -> Result<()> {
    let dims = points.first().map(|p| p.len()).unwrap_or(0);
    let mut w = writer(path)?;
    let mut header = vec![String::from("atom")];
    header.extend((0..dims).map(|i| format!("x{i}")));
    put(&mut w, path, &header)?;
    for (id, point) in atom_ids.iter().zip(points) {
        let mut row = vec![id.clone()];
        row.extend(point.iter().map(|c| c.to_string()));
        put(&mut w, path, &row)?;
    }
    finish(w, path)
}

/// Writes per-atom level families: `atom,level,vertex,x0,…`.
pub fn write_atom_levels_csv(
    path: &Path,
    atom_ids: &[String],
    values: &[FuzzyNumber],
) -> Result<()> {
    let dims = values.first().map(|v| v.dims()).unwrap_or(0);
    let mut w = writer(path)?;
    let mut header = vec![String::from("atom"), String::from("level"), String::from("vertex")];
    header.extend((0..dims).map(|i| format!("x{i}")));
    put(&mut w, path, &header)?;
    for (id, value) in atom_ids.iter().zip(values) {
        for (&level, body) in value.levels().iter().zip(value.bodies()) {
            for (vi, vertex) in body.vertices().iter().enumerate() {
                let mut row = vec![id.clone(), level.to_string(), vi.to_string()];
                row.extend(vertex.iter().map(|c| c.to_string()));
                put(&mut w, path, &row)?;
            }
        }
    }
    finish(w, path)
}

/// Writes decomposition check rows: `check,scope,residual,bound,pass`.
pub struct CheckCsvRow {
    pub check: &'static str,
    pub scope: String,
    pub residual: f64,
    pub bound: f64,
    pub pass: bool,
}

pub fn write_checks_csv(path: &Path, rows: &[CheckCsvRow]) -> Result<()> {
    let mut w = writer(path)?;
    put(&mut w, path, &["check", "scope", "residual", "bound", "pass"])?;
    for row in rows {
        put(
            &mut w,
            path,
            &[
                row.check.to_string(),
                row.scope.clone(),
                row.residual.to_string(),
                row.bound.to_string(),
                row.pass.to_string(),
            ],
        )?;
    }
    finish(w, path)
}

/// Writes 2-D level polygons: `level,vertex,x,y`, vertices in
/// counterclockwise hull order starting from the lexicographically
/// smallest vertex.
pub fn write_polygons_csv(path: &Path, value: &FuzzyNumber) -> Result<()> {
    let mut w = writer(path)?;
    put(&mut w, path, &["level", "vertex", "x", "y"])?;
    for (&level, body) in value.levels().iter().zip(value.bodies()) {
        for (vi, vertex) in body.vertices().iter().enumerate() {
            put(
                &mut w,
                path,
                &[
                    level.to_string(),
                    vi.to_string(),
                    vertex[0].to_string(),
                    vertex[1].to_string(),
                ],
            )?;
        }
    }
    finish(w, path)
}

/// Writes a membership sample grid: `x,y,grade`, row-major over a
/// rectangular lattice.
pub fn write_grid_csv(
    path: &Path,
    points: &[(f64, f64)],
    grades: &[f64],
) -> Result<()> {
    let mut w = writer(path)?;
    put(&mut w, path, &["x", "y", "grade"])?;
    for ((x, y), grade) in points.iter().zip(grades) {
        put(&mut w, path, &[x.to_string(), y.to_string(), grade.to_string()])?;
    }
    finish(w, path)
}

/// Joins an output prefix with a suffix: prefix `out` → `out.levels.csv`.
pub fn out_path(prefix: &Path, suffix: &str) -> PathBuf {
    let mut name = prefix
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| String::from("out"));
    name.push('.');
    name.push_str(suffix);
    prefix.with_file_name(name)
}

/// A short human summary of one convex body for stdout.
pub fn body_summary(body: &ConvexBody) -> String {
    format!("{} vertices in R^{}", body.vertices().len(), body.dims())
}

fn writer(path: &Path) -> Result<csv::Writer<std::fs::File>> {
    let file = std::fs::File::create(path).map_err(|e| CliError::io(path, e))?;
    Ok(csv::Writer::from_writer(file))
}

fn put<W: std::io::Write, S: AsRef<[u8]>>(
    w: &mut csv::Writer<W>,
    path: &Path,
    row: &[S],
) -> Result<()> {
    w.write_record(row).map_err(|e| match e.into_kind() {
        csv::ErrorKind::Io(io) => CliError::io(path, io),
        other => CliError::Invalid(format!("csv write failed: {other:?}")),
    })
}

fn finish<W: std::io::Write>(mut w: csv::Writer<W>, path: &Path) -> Result<()> {
    w.flush().map_err(|e| CliError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_classify_by_residual_and_flag() {
        assert_eq!(CheckRow::new("x", 1e-12, 1e-9).status, "pass");
        assert_eq!(CheckRow::new("x", 2e-9, 1e-9).status, "fail");
        // Equality sits inside the budget.
        assert_eq!(CheckRow::new("x", 1e-9, 1e-9).status, "pass");
        assert!(CheckRow::flag("x", true, 0.0).passed());
        assert!(!CheckRow::flag("x", false, 0.0).passed());
        assert!(CheckRow::skipped("x", "why").passed());
    }

    #[test]
    fn table_lines_up_and_shows_skips() {
        let rows = vec![
            CheckRow::new("alpha", 5e-10, 1e-9),
            CheckRow::skipped("beta", "not requested"),
        ];
        let table = render_table(&rows);
        let lines: Vec<&str> = table.lines().collect();
        assert!(lines[0].starts_with("check"));
        assert!(lines[1].chars().all(|c| c == '-'));
        assert!(lines[2].contains("alpha") && lines[2].contains("pass"));
        assert!(lines[3].contains("beta") && lines[3].contains("skipped (not requested)"));
        // Every data row for numeric checks keeps one fixed width.
        assert_eq!(lines[1].len(), 73);
    }

    #[test]
    fn out_paths_are_prefix_dot_suffix_siblings() {
        let p = out_path(Path::new("/tmp/runs/alpha"), "levels.csv");
        assert_eq!(p, PathBuf::from("/tmp/runs/alpha.levels.csv"));
        let rel = out_path(Path::new("beta"), "grid.csv");
        assert_eq!(rel, PathBuf::from("beta.grid.csv"));
    }

    #[test]
    fn float_cells_round_trip_through_csv() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sel.csv");
        let points = vec![vec![0.1 + 0.2, -3.5]];
        write_selection_csv(&path, &[String::from("a")], &points).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("atom,x0,x1"));
        let row = lines.next().unwrap();
        let cells: Vec<&str> = row.split(',').collect();
        assert_eq!(cells[0], "a");
        // Shortest-roundtrip rendering: parsing back recovers the bits.
        assert_eq!(cells[1].parse::<f64>().unwrap(), 0.1 + 0.2);
        assert_eq!(cells[2].parse::<f64>().unwrap(), -3.5);
    }
}
