use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 5] = ["sample_index", "xplus_1", "xminus_1", "xplus_2", "xminus_2"];

/// `N x 4` homodyne records in `(X+_1, X-_1, X+_2, X-_2)` order.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleBatch {
    samples: Vec<[f64; 4]>,
    seed: u64,
    source_label: String,
}

impl SampleBatch {
    pub fn new(samples: Vec<[f64; 4]>, seed: u64, source_label: impl Into<String>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::invalid(
                "n",
                samples.len() as f64,
                "a batch needs at least 2 samples",
            ));
        }
        if let Some(i) = samples
            .iter()
            .position(|r| r.iter().any(|v| !v.is_finite()))
        {
            return Err(Error::Validation {
                field: format!("samples[{i}]"),
                message: "non-finite value".into(),
            });
        }
        Ok(Self {
            samples,
            seed,
            source_label: source_label.into(),
        })
    }

    pub fn samples(&self) -> &[[f64; 4]] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn source_label(&self) -> &str {
        &self.source_label
    }
}

/// Writes the batch as CSV preceded by `# seed=` and `# source_label=`
/// comment lines. Values use the shortest representation that parses back
/// to the same double.
pub fn write_batch(batch: &SampleBatch, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    let label = batch.source_label.replace(['\n', '\r'], " ");
    writeln!(out, "# seed={}", batch.seed).map_err(|e| Error::io(path, e))?;
    writeln!(out, "# source_label={label}").map_err(|e| Error::io(path, e))?;
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(CSV_HEADER)?;
    for (i, row) in batch.samples.iter().enumerate() {
        writer.write_record(
            std::iter::once(i.to_string()).chain(row.iter().map(|v| v.to_string())),
        )?;
    }
    writer.flush().map_err(|e| Error::io(path, e))?;
    Ok(())
}

pub fn read_batch(path: impl AsRef<Path>) -> Result<SampleBatch> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = BufReader::new(file);

    let mut seed = None;
    let mut label = String::new();
    let mut line_no = 0;
    let mut line = String::new();
    let header = loop {
        line.clear();
        if reader
            .read_line(&mut line)
            .map_err(|e| Error::io(path, e))?
            == 0
        {
            return Err(Error::Parse {
                line: line_no + 1,
                message: "missing header row".into(),
            });
        }
        line_no += 1;
        let text = line.trim_end_matches(['\n', '\r']);
        let Some(comment) = text.strip_prefix('#') else {
            break text.to_string();
        };
        if let Some((key, value)) = comment.trim().split_once('=') {
            match key.trim() {
                "seed" => {
                    seed = Some(value.trim().parse::<u64>().map_err(|e| Error::Parse {
                        line: line_no,
                        message: format!("invalid seed {:?}: {e}", value.trim()),
                    })?)
                }
                "source_label" => label = value.to_string(),
                _ => {}
            }
        }
    };
    let header_line = line_no;
    let expected = CSV_HEADER.join(",");
    if header.trim() != expected {
        return Err(Error::Parse {
            line: header_line,
            message: format!("missing header row: expected {expected:?}, found {header:?}"),
        });
    }
    let seed = seed.ok_or_else(|| Error::Parse {
        line: 1,
        message: "missing '# seed=' comment line".into(),
    })?;

    let mut rows = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(reader);
    let mut samples = Vec::new();
    for record in rows.records() {
        let record = record?;
        let line = header_line + record.position().map_or(0, |p| p.line() as usize);
        if record.len() != 5 {
            return Err(Error::Parse {
                line,
                message: format!("expected 5 columns, found {}", record.len()),
            });
        }
        let index: usize = record[0].trim().parse().map_err(|_| Error::Parse {
            line,
            message: format!("invalid sample_index {:?}", &record[0]),
        })?;
        if index != samples.len() {
            return Err(Error::Parse {
                line,
                message: format!("sample_index {index} out of sequence"),
            });
        }
        let mut row = [0.0; 4];
        for (k, cell) in record.iter().skip(1).enumerate() {
            row[k] = cell.trim().parse().map_err(|_| Error::Parse {
                line,
                message: format!("non-numeric value {cell:?} in column {}", CSV_HEADER[k + 1]),
            })?;
        }
        samples.push(row);
    }
    SampleBatch::new(samples, seed, label)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::GaussianTwoModeState;
    use crate::sampling::draw_samples_labeled;

    #[test]
    fn write_then_read_is_identity() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("batch.csv");
        let state = GaussianTwoModeState::two_mode_squeezed(0.9).unwrap();
        let batch = draw_samples_labeled(&state, 500, 99, "tmsv r=0.9").unwrap();
        write_batch(&batch, &path).unwrap();
        assert_eq!(read_batch(&path).unwrap(), batch);
    }

    fn parse(text: &str) -> Result<SampleBatch> {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("b.csv");
        std::fs::write(&path, text).unwrap();
        read_batch(&path)
    }

    #[test]
    fn three_columns_names_the_line() {
        let text = "# seed=1\n# source_label=x\nsample_index,xplus_1,xminus_1,xplus_2,xminus_2\n\
                    0,1,2,3,4\n1,1,2,3\n";
        match parse(text).unwrap_err() {
            Error::Parse { line, message } => {
                assert_eq!(line, 5);
                assert!(message.contains("columns"));
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn missing_header_is_rejected() {
        let err = parse("# seed=1\n0,1,2,3,4\n1,1,2,3,4\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn non_numeric_cell_is_rejected() {
        let text =
            "# seed=1\nsample_index,xplus_1,xminus_1,xplus_2,xminus_2\n0,1,2,3,4\n1,1,x,3,4\n";
        let err = parse(text).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err}");
    }
}
