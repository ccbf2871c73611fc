//! Two-column data files for plotting tools.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use super::output::{csv_error, TRAJECTORY_COLUMNS};
use crate::{Error, Result};

/// Quantities that can be extracted from a trajectory file.
pub const PLOT_QUANTITIES: [&str; 13] = [
    "re_u",
    "im_u",
    "abs_u",
    "v",
    "energy",
    "entropy",
    "temperature",
    "free_energy",
    "heat_cum",
    "work_cum",
    "omega_renorm",
    "gamma",
    "gamma_tilde",
];

/// Writes `<stem>.<quantity>.dat` with `time value` records for each
/// requested quantity, all of them when `quantities` is empty. Undefined
/// values become a single blank line so the curve is drawn with a break.
pub fn emit_plot_data(trajectory: &Path, quantities: &[String], out_dir: Option<&Path>) -> Result<Vec<PathBuf>> {
    let selected: Vec<&str> = if quantities.is_empty() {
        PLOT_QUANTITIES.to_vec()
    } else {
        quantities.iter().map(String::as_str).collect()
    };
    if let Some(bad) = selected.iter().find(|q| !PLOT_QUANTITIES.contains(q)) {
        return Err(Error::Config(format!(
            "unknown quantity `{bad}`; valid names: {}",
            PLOT_QUANTITIES.join(", ")
        )));
    }

    let file = File::open(trajectory).map_err(|e| {
        Error::Config(format!("cannot open {}: {e}", trajectory.display()))
    })?;
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(file);
    let headers = reader.headers().map_err(csv_error)?.clone();
    let column = |name: &str| -> Result<usize> {
        headers.iter().position(|h| h == name).ok_or_else(|| Error::Parse {
            what: trajectory.display().to_string(),
            reason: format!("missing column `{name}`"),
        })
    };
    if headers.len() != TRAJECTORY_COLUMNS.len() {
        return Err(Error::Parse {
            what: trajectory.display().to_string(),
            reason: "not a trajectory file".into(),
        });
    }
    let time_col = column("time")?;
    let cols: Vec<usize> = selected.iter().map(|q| column(q)).collect::<Result<_>>()?;
    let records: Vec<csv::StringRecord> = reader.records().collect::<Result<_, _>>().map_err(csv_error)?;

    let dir = out_dir
        .map(Path::to_path_buf)
        .or_else(|| trajectory.parent().map(Path::to_path_buf))
        .unwrap_or_default();
    std::fs::create_dir_all(&dir)?;
    let stem = trajectory.file_stem().and_then(|s| s.to_str()).unwrap_or("trajectory");

    let mut written = Vec::with_capacity(selected.len());
    for (name, &col) in selected.iter().zip(&cols) {
        let path = dir.join(format!("{stem}.{name}.dat"));
        let mut out = BufWriter::new(File::create(&path)?);
        writeln!(out, "# time {name}")?;
        let mut in_gap = false;
        for record in &records {
            let value = record.get(col).unwrap_or("");
            if value.is_empty() {
                if !in_gap {
                    writeln!(out)?;
                    in_gap = true;
                }
            } else {
                writeln!(out, "{} {value}", &record[time_col])?;
                in_gap = false;
            }
        }
        out.flush()?;
        written.push(path);
    }
    Ok(written)
}
