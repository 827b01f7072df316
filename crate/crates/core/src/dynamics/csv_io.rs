//! Trajectory CSV files.
//!
//! Eigenvalue files have the header `t,lambda1,lambda3,lambda_star`, rate
//! files `t,gamma_plus,gamma_minus,gamma3`. Floats are written with 17
//! significant digits so that every `f64` survives a round trip.

use std::io::{Read, Write};

use super::{EigenvalueTrajectory, RateTrajectory, TimeGrid};
use crate::{Error, Result};

pub const EIGENVALUE_HEADER: [&str; 4] = ["t", "lambda1", "lambda3", "lambda_star"];
pub const RATE_HEADER: [&str; 4] = ["t", "gamma_plus", "gamma_minus", "gamma3"];
pub const COMBINED_HEADER: [&str; 7] = ["t", "lambda1", "lambda3", "lambda_star", "gamma_plus", "gamma_minus", "gamma3"];

/// `{:.16e}`: one leading digit plus sixteen decimals.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes a header and rows of floats in the crate's float format.
pub fn write_table<W: Write>(out: W, header: &[&str], rows: impl Iterator<Item = Vec<f64>>) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.into_iter().map(format_float))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_eigenvalues<W: Write>(out: W, traj: &EigenvalueTrajectory) -> Result<()> {
    let rows = (0..traj.len()).map(|i| vec![traj.grid.point(i), traj.lambda1[i], traj.lambda3[i], traj.lambda_star[i]]);
    write_table(out, &EIGENVALUE_HEADER, rows)
}

pub fn write_rates<W: Write>(out: W, rates: &RateTrajectory) -> Result<()> {
    let rows = rates.samples().map(|(t, r)| vec![t, r.gamma_plus, r.gamma_minus, r.gamma3]);
    write_table(out, &RATE_HEADER, rows)
}

/// Seven columns: eigenvalues then rates. Both must be on the same grid and
/// the rates complete.
pub fn write_combined<W: Write>(out: W, traj: &EigenvalueTrajectory, rates: &RateTrajectory) -> Result<()> {
    if !rates.is_complete() || rates.len() != traj.len() {
        return Err(Error::LengthMismatch { expected: traj.len(), actual: rates.len() });
    }
    let rows = (0..traj.len()).map(|i| {
        vec![
            traj.grid.point(i),
            traj.lambda1[i],
            traj.lambda3[i],
            traj.lambda_star[i],
            rates.gamma_plus[i],
            rates.gamma_minus[i],
            rates.gamma3[i],
        ]
    });
    write_table(out, &COMBINED_HEADER, rows)
}

fn read_columns<R: Read>(input: R, header: &[&str]) -> Result<Vec<Vec<f64>>> {
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let got: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
    if got.len() < header.len() || got.iter().zip(header).any(|(a, b)| a != b) {
        return Err(Error::Parse(format!("expected header `{}`, found `{}`", header.join(","), got.join(","))));
    }
    let mut cols = vec![Vec::new(); header.len()];
    for (line, record) in r.records().enumerate() {
        let record = record?;
        for (c, col) in cols.iter_mut().enumerate() {
            let field = record.get(c).ok_or_else(|| Error::Parse(format!("row {}: missing column {}", line + 2, header[c])))?;
            let v: f64 = field.parse().map_err(|_| Error::Parse(format!("row {}: `{field}` is not a number", line + 2)))?;
            col.push(v);
        }
    }
    Ok(cols)
}

/// Rebuilds the grid from a time column; it must start at 0 and be uniform.
pub fn grid_from_times(times: &[f64]) -> Result<TimeGrid> {
    let n = times.len();
    if n < 3 {
        return Err(Error::Parse(format!("need at least 3 rows, got {n}")));
    }
    if times[0] != 0.0 {
        return Err(Error::Parse(format!("first time must be 0, got {}", times[0])));
    }
    let grid = TimeGrid::new(times[n - 1], n)?;
    let h = grid.step();
    if let Some((i, t)) = times.iter().enumerate().find(|(i, t)| (grid.point(*i) - **t).abs() > 1e-9 * h) {
        return Err(Error::Parse(format!("row {}: time {t} breaks uniform spacing", i + 2)));
    }
    Ok(grid)
}

pub fn read_eigenvalues<R: Read>(input: R) -> Result<EigenvalueTrajectory> {
    let mut cols = read_columns(input, &EIGENVALUE_HEADER)?;
    let grid = grid_from_times(&cols[0])?;
    let lambda_star = cols.pop().unwrap();
    let lambda3 = cols.pop().unwrap();
    let lambda1 = cols.pop().unwrap();
    EigenvalueTrajectory::new(grid, lambda1, lambda3, lambda_star)
}

pub fn read_rates<R: Read>(input: R) -> Result<RateTrajectory> {
    let mut cols = read_columns(input, &RATE_HEADER)?;
    let grid = grid_from_times(&cols[0])?;
    let g3 = cols.pop().unwrap();
    let gm = cols.pop().unwrap();
    let gp = cols.pop().unwrap();
    RateTrajectory::new(grid, gp, gm, g3)
}

/// Two-column `t,<name>` sample file.
pub fn read_samples<R: Read>(input: R, name: &str) -> Result<(TimeGrid, Vec<f64>)> {
    let mut cols = read_columns(input, &["t", name])?;
    let grid = grid_from_times(&cols[0])?;
    Ok((grid, cols.pop().unwrap()))
}
