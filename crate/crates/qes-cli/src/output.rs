//! Plot-data series and serialization helpers.

use std::io::Write;

use anyhow::Result;

/// Named columns sampled on a strictly increasing abscissa; `None` marks a
/// pole or an unavailable value and is written as an empty field.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSeries {
    pub columns: Vec<String>,
    pub rows: Vec<(f64, Vec<Option<f64>>)>,
}

impl GridSeries {
    /// Writes the series as CSV with a header row.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for (x, vals) in &self.rows {
            let mut rec = Vec::with_capacity(vals.len() + 1);
            rec.push(fmt(*x));
            rec.extend(
                vals.iter()
                    .map(|v| v.filter(|t| t.is_finite()).map(fmt).unwrap_or_default()),
            );
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Shortest representation that round-trips exactly.
fn fmt(v: f64) -> String {
    format!("{v:?}")
}

/// Evenly spaced points; `points ≥ 2`.
pub fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    qes::verify::linspace(lo, hi, points)
}
