//! CSV files with an `x` column followed by value columns.

use std::io::{Read, Write};
use std::path::Path;

use hormander_core::{Grid, GridFunction, VectorGridFunction};

use crate::error::{LabError, LabResult};

/// Reads `x,value` rows into a grid function. The grid is recovered from
/// the `x` column, which must hold the cell centres of a symmetric grid.
pub fn read_grid_function(path: &Path) -> LabResult<GridFunction> {
    let file = std::fs::File::open(path).map_err(|e| LabError::io(path, e))?;
    parse_grid_function(file, path)
}

pub fn parse_grid_function(input: impl Read, path: &Path) -> LabResult<GridFunction> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(input);
    let parse_err = |line: u64, message: String| LabError::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let headers = reader
        .headers()
        .map_err(|e| parse_err(1, e.to_string()))?
        .clone();
    if headers.len() < 2 || &headers[0] != "x" {
        return Err(parse_err(
            1,
            "expected a header starting with `x,value`".into(),
        ));
    }
    let mut xs = Vec::new();
    let mut values = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_err(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let field = |i: usize| -> LabResult<f64> {
            let raw = record
                .get(i)
                .ok_or_else(|| parse_err(line, format!("missing column {}", i + 1)))?;
            raw.parse::<f64>()
                .map_err(|_| parse_err(line, format!("`{raw}` is not a number")))
        };
        xs.push((field(0)?, line));
        values.push(field(1)?);
    }
    if xs.len() < 2 {
        return Err(parse_err(1, "need at least two rows".into()));
    }
    let n = xs.len();
    let h = (xs[n - 1].0 - xs[0].0) / (n - 1) as f64;
    let half_len = 0.5 * h * n as f64;
    let grid = Grid::new(half_len, n)?;
    for (c, &(x, line)) in xs.iter().enumerate() {
        let expected = grid.x(c);
        if (x - expected).abs() > 1e-6 * h {
            return Err(parse_err(
                line,
                format!("x = {x} is not the centre of cell {c} of a symmetric grid (expected {expected})"),
            ));
        }
    }
    if let Some(c) = values.iter().position(|v| !v.is_finite()) {
        return Err(parse_err(xs[c].1, "value is not finite".into()));
    }
    Ok(GridFunction::from_samples(grid, values)?)
}

pub fn write_grid_function(f: &GridFunction, out: impl Write) -> LabResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "value"]).map_err(csv_err)?;
    for (x, v) in f.grid().xs().zip(f.samples()) {
        w.write_record([x.to_string(), v.to_string()])
            .map_err(csv_err)?;
    }
    w.flush().map_err(|e| LabError::io("<output>", e))?;
    Ok(())
}

/// Columns `x, level_{l_min}, …, level_{l_max}`.
pub fn write_vector_function(f: &VectorGridFunction, out: impl Write) -> LabResult<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["x".to_string()];
    header.extend((f.l_min()..=f.l_max()).map(|l| format!("level_{l}")));
    w.write_record(&header).map_err(csv_err)?;
    for (c, x) in f.grid().xs().enumerate() {
        let mut row = vec![x.to_string()];
        row.extend(f.column(c).map(|(_, v)| v.to_string()));
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush().map_err(|e| LabError::io("<output>", e))?;
    Ok(())
}

fn csv_err(e: csv::Error) -> LabError {
    LabError::Config(format!("csv output: {e}"))
}
