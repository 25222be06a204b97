//! CSV emission and strict parsing.
//!
//! Contract: comma separated, one header row, LF line endings, `.` decimal
//! separator, every value printed with 17 significant digits so a parsed
//! file reproduces the in-memory doubles exactly. Files are written
//! whole-file atomically (temp file in the target directory, then rename).

use std::io::Write;
use std::path::Path;

use fracduff_core::{ConvergenceReport, Trajectory};

use crate::CliError;

/// 17 significant digits: round-trips every f64.
pub fn format_full(v: f64) -> String {
    format!("{v:.16e}")
}

fn format_cell(v: Option<f64>) -> String {
    v.map(format_full).unwrap_or_default()
}

pub fn trajectory_csv(traj: &Trajectory) -> String {
    let mut out = String::with_capacity(traj.len() * 96 + 16);
    out.push_str("t,x,y,aux\n");
    for k in 0..traj.len() {
        out.push_str(&format_full(traj.t[k]));
        out.push(',');
        out.push_str(&format_full(traj.x[k]));
        out.push(',');
        out.push_str(&format_full(traj.y[k]));
        out.push(',');
        out.push_str(&format_full(traj.aux[k]));
        out.push('\n');
    }
    out
}

/// Per-node absolute x difference of two trajectories on the same grid.
pub fn diff_csv(a: &Trajectory, b: &Trajectory) -> String {
    debug_assert_eq!(a.len(), b.len());
    let mut out = String::with_capacity(a.len() * 48 + 16);
    out.push_str("t,abs_dx\n");
    for k in 0..a.len() {
        out.push_str(&format_full(a.t[k]));
        out.push(',');
        out.push_str(&format_full((a.x[k] - b.x[k]).abs()));
        out.push('\n');
    }
    out
}

pub fn convergence_csv(report: &ConvergenceReport) -> String {
    let mut out = String::from("N,h,xi_efds,p_efds,xi_abm,p_abm,p2_efds,p2_abm\n");
    for row in &report.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            row.n,
            format_full(row.h),
            format_cell(row.xi_efds),
            format_cell(row.p_efds),
            format_cell(row.xi_abm),
            format_cell(row.p_abm),
            format_cell(row.p2_efds),
            format_cell(row.p2_abm),
        ));
    }
    out
}

/// Columns of a parsed trajectory CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesData {
    pub t: Vec<f64>,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub aux: Vec<f64>,
}

impl SeriesData {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }
}

/// Strict parse of the trajectory contract; malformed input is reported
/// with its 1-based line number.
pub fn parse_trajectory_csv(text: &str, origin: &Path) -> Result<SeriesData, CliError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, "t,x,y,aux")) => {}
        Some((_, header)) => {
            return Err(CliError::Config(format!(
                "{}: line 1: expected header `t,x,y,aux`, found `{header}`",
                origin.display()
            )))
        }
        None => {
            return Err(CliError::Config(format!(
                "{}: empty file",
                origin.display()
            )))
        }
    }
    let mut data = SeriesData {
        t: Vec::new(),
        x: Vec::new(),
        y: Vec::new(),
        aux: Vec::new(),
    };
    for (idx, line) in lines {
        let line_no = idx + 1;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(CliError::Config(format!(
                "{}: line {line_no}: expected 4 fields, found {}",
                origin.display(),
                fields.len()
            )));
        }
        let mut values = [0.0f64; 4];
        for (slot, field) in values.iter_mut().zip(&fields) {
            *slot = field.parse().map_err(|_| {
                CliError::Config(format!(
                    "{}: line {line_no}: malformed number `{field}`",
                    origin.display()
                ))
            })?;
        }
        data.t.push(values[0]);
        data.x.push(values[1]);
        data.y.push(values[2]);
        data.aux.push(values[3]);
    }
    if data.is_empty() {
        return Err(CliError::Config(format!(
            "{}: no data rows",
            origin.display()
        )));
    }
    Ok(data)
}

/// Whole-file atomic write: temp file next to the target, then rename.
pub fn write_atomic(path: &Path, content: &str) -> Result<(), CliError> {
    let parent = path.parent().filter(|p| !p.as_os_str().is_empty());
    let dir = parent.unwrap_or_else(|| Path::new("."));
    let io_err = |e: std::io::Error| CliError::Io(format!("writing {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(content.as_bytes()).map_err(io_err)?;
    tmp.persist(path)
        .map_err(|e| CliError::Io(format!("writing {}: {}", path.display(), e.error)))?;
    Ok(())
}
