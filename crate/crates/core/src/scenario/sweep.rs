use std::io::Write;
use std::path::Path;

use rayon::prelude::*;

use super::Scenario;
use crate::criteria::{classify, CriteriaReport};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub report: CriteriaReport,
}

/// Analytic criteria along a one-parameter grid, in grid order.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub params: Vec<String>,
    pub rows: Vec<SweepRow>,
}

/// Grid from `start:stop:count` (inclusive linspace) or a comma list.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let bad = |message: String| Error::Validation {
        field: "grid".into(),
        message,
    };
    let number = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| bad(format!("invalid number {s:?}")))
    };
    let parts: Vec<&str> = spec.split(':').collect();
    let grid = match parts.as_slice() {
        [start, stop, count] => {
            let (a, b) = (number(start)?, number(stop)?);
            let n: usize = count
                .trim()
                .parse()
                .map_err(|_| bad(format!("invalid count {count:?}")))?;
            match n {
                0 => return Err(bad("count must be positive".into())),
                1 => vec![a],
                _ => (0..n)
                    .map(|i| {
                        if i == n - 1 {
                            b
                        } else {
                            a + (b - a) * i as f64 / (n - 1) as f64
                        }
                    })
                    .collect(),
            }
        }
        [list] => list
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(number)
            .collect::<Result<Vec<_>>>()?,
        _ => {
            return Err(bad(format!(
                "expected start:stop:count or a comma list, got {spec:?}"
            )))
        }
    };
    if grid.is_empty() {
        return Err(bad("empty grid".into()));
    }
    Ok(grid)
}

/// Sets every parameter in `params` to each grid value in turn and classifies
/// the resulting state. Points are evaluated in parallel.
pub fn sweep(scenario: &Scenario, params: &[String], grid: &[f64]) -> Result<SweepTable> {
    if params.is_empty() {
        return Err(Error::Validation {
            field: "param".into(),
            message: "at least one parameter is required".into(),
        });
    }
    // fail on unknown names even for an empty grid
    for p in params {
        scenario.with_param(p, grid.first().copied().unwrap_or(0.0))?;
    }
    let angles = scenario.angles();
    let rows = grid
        .par_iter()
        .map(|&value| {
            let point = params
                .iter()
                .try_fold(scenario.clone(), |s, p| s.with_param(p, value))?;
            let report = classify(&point.build_state()?, angles)?;
            Ok(SweepRow { value, report })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepTable {
        params: params.to_vec(),
        rows,
    })
}

impl SweepTable {
    pub fn header(&self) -> Vec<String> {
        let mut header = vec![self.params.join("+")];
        if let Some(row) = self.rows.first() {
            header.extend(row.report.scalars().into_iter().map(|(n, _)| n.to_string()));
        }
        header.extend((1..=4).map(|l| format!("level{l}")));
        header
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut writer = csv::Writer::from_writer(out);
        writer.write_record(self.header())?;
        for row in &self.rows {
            let record = std::iter::once(row.value.to_string())
                .chain(row.report.scalars().into_iter().map(|(_, v)| v.to_string()))
                .chain(row.report.levels().into_iter().map(|b| b.to_string()));
            writer.write_record(record)?;
        }
        writer.flush().map_err(|e| Error::io("<sweep>", e))?;
        Ok(())
    }

    pub fn write_csv_file(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        self.write_csv(std::io::BufWriter::new(file))
    }

    pub fn values(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.value).collect()
    }

    /// Values of a named criterion column (see [`CriteriaReport::scalars`]).
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        self.rows
            .iter()
            .map(|r| {
                r.report
                    .scalars()
                    .into_iter()
                    .find(|(n, _)| *n == name)
                    .map(|(_, v)| v)
            })
            .collect()
    }

    /// Point where `column - level` changes sign, located by linear
    /// interpolation between the bracketing grid points. Grid points sitting
    /// exactly on `level` count only if the sign differs on either side, so
    /// a curve that merely touches the level is not a crossing.
    pub fn crossing(&self, column: &str, level: f64) -> Option<f64> {
        let ys = self.column(column)?;
        let xs = self.values();
        let signed: Vec<(usize, f64)> = ys
            .iter()
            .map(|y| y - level)
            .enumerate()
            .filter(|(_, d)| *d != 0.0)
            .collect();
        signed.windows(2).find_map(|w| {
            let ((i, a), (j, b)) = (w[0], w[1]);
            if a.signum() == b.signum() {
                None
            } else if j == i + 1 {
                Some(xs[i] + (xs[j] - xs[i]) * a / (a - b))
            } else {
                Some(xs[i + 1])
            }
        })
    }
}
