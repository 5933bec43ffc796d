//! File formats written by the command-line tool: numeric matrices,
//! 8-bit grayscale heatmaps and single-column series.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

/// Writes `bytes` to a sibling temporary file, then renames it over `path`
/// so readers never observe a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let name = path
        .file_name()
        .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidInput, "path has no file name"))?;
    let mut tmp_name = std::ffi::OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(format!(".tmp{}", std::process::id()));
    let tmp: PathBuf = path.with_file_name(tmp_name);

    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}

/// Header row `axis,0,1,...`, then one row per axis value.
pub fn matrix_csv(axis_name: &str, axis: &[f64], rows: &[Vec<f64>]) -> String {
    let width = rows.first().map_or(0, Vec::len);
    let mut out = String::new();
    out.push_str(axis_name);
    for t in 0..width {
        out.push_str(&format!(",{t}"));
    }
    out.push('\n');
    for (a, row) in axis.iter().zip(rows) {
        out.push_str(&a.to_string());
        for v in row {
            out.push(',');
            out.push_str(&v.to_string());
        }
        out.push('\n');
    }
    out
}

/// Parses a matrix written by [`matrix_csv`] back into axis values and rows.
pub fn parse_matrix_csv(text: &str) -> Result<(Vec<f64>, Vec<Vec<f64>>), String> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or("empty matrix file")?;
    let width = header.split(',').count() - 1;
    let mut axis = Vec::new();
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let cells: Vec<f64> = line
            .split(',')
            .map(|c| c.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| format!("matrix row {}: {e}", i + 1))?;
        if cells.len() != width + 1 {
            return Err(format!(
                "matrix row {} has {} columns, expected {}",
                i + 1,
                cells.len(),
                width + 1
            ));
        }
        axis.push(cells[0]);
        rows.push(cells[1..].to_vec());
    }
    Ok((axis, rows))
}

/// Binary PGM (P5), one image row per matrix row. The matrix minimum maps
/// to 0 and the maximum to 255; a constant matrix renders as mid-gray.
pub fn pgm(rows: &[Vec<f64>]) -> Vec<u8> {
    let height = rows.len();
    let width = rows.first().map_or(0, Vec::len);
    let (lo, hi) = rows
        .iter()
        .flatten()
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });

    let mut out = format!("P5\n{width} {height}\n255\n").into_bytes();
    out.reserve(width * height);
    let span = hi - lo;
    for &v in rows.iter().flatten() {
        let g = if span.is_nan() || span <= 0.0 || !v.is_finite() {
            128
        } else {
            (255.0 * (v - lo) / span).round().clamp(0.0, 255.0) as u8
        };
        out.push(g);
    }
    out
}

/// One value per line, shortest round-trip form.
pub fn column(values: &[f64]) -> String {
    let mut out = String::with_capacity(values.len() * 20);
    for v in values {
        out.push_str(&v.to_string());
        out.push('\n');
    }
    out
}
