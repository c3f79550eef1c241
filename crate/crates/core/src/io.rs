//! CSV ingestion and export.
//!
//! Input format: a header row of channel labels, then one sample per channel
//! per row. An optional first column named `time` is excluded from the math
//! and used only to infer the sample rate from the median spacing.
//!
//! All floats are written with 17 significant digits, enough for exact f64
//! round trips and byte-stable reruns.

use std::io::{Read, Write};

use crate::emd::Decomposition;
use crate::error::{Error, Result};
use crate::signal::{MultichannelSignal, TimeSeries};

/// Formats a float with 17 significant digits.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// Parsed CSV: labels, per-channel columns, and the sample rate inferred
/// from a `time` column when present.
#[derive(Debug, Clone)]
pub struct CsvContents {
    pub labels: Vec<String>,
    pub columns: Vec<Vec<f64>>,
    pub inferred_rate: Option<f64>,
}

impl CsvContents {
    /// Converts to a multichannel signal. Precedence for the sample rate:
    /// explicit override, then the rate inferred from the time column, then
    /// 1 Hz.
    pub fn into_signal(self, rate_override: Option<f64>) -> Result<MultichannelSignal> {
        let rate = rate_override.or(self.inferred_rate).unwrap_or(1.0);
        let channels: Vec<TimeSeries> = self
            .labels
            .iter()
            .zip(self.columns)
            .map(|(label, samples)| TimeSeries::new(label.clone(), samples, rate))
            .collect::<Result<_>>()?;
        let count = channels.len();
        MultichannelSignal::new(channels, count)
    }
}

/// Reads a channels-as-columns CSV.
pub fn read_csv<R: Read>(reader: R) -> Result<CsvContents> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let headers = rdr
        .headers()
        .map_err(|e| Error::CsvParse {
            line: 1,
            message: e.to_string(),
        })?
        .clone();
    if headers.is_empty() {
        return Err(Error::CsvParse {
            line: 1,
            message: "empty header row".into(),
        });
    }
    let time_column = headers
        .iter()
        .position(|h| h.eq_ignore_ascii_case("time"))
        .filter(|idx| *idx == 0);

    let labels: Vec<String> = headers
        .iter()
        .enumerate()
        .filter(|(i, _)| Some(*i) != time_column)
        .map(|(_, h)| h.to_string())
        .collect();
    if labels.is_empty() {
        return Err(Error::CsvParse {
            line: 1,
            message: "no data columns besides time".into(),
        });
    }

    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); labels.len()];
    let mut times: Vec<f64> = Vec::new();
    for (row_index, record) in rdr.records().enumerate() {
        let line = row_index + 2;
        let record = record.map_err(|e| Error::CsvParse {
            line,
            message: e.to_string(),
        })?;
        if record.len() != headers.len() {
            return Err(Error::CsvParse {
                line,
                message: format!(
                    "expected {} fields, found {}",
                    headers.len(),
                    record.len()
                ),
            });
        }
        let mut col = 0usize;
        for (i, field) in record.iter().enumerate() {
            let value: f64 = field.parse().map_err(|_| Error::CsvParse {
                line,
                message: format!("'{field}' is not a number (column '{}')", &headers[i]),
            })?;
            if Some(i) == time_column {
                times.push(value);
            } else {
                columns[col].push(value);
                col += 1;
            }
        }
    }

    let inferred_rate = infer_rate(&times);
    Ok(CsvContents {
        labels,
        columns,
        inferred_rate,
    })
}

fn infer_rate(times: &[f64]) -> Option<f64> {
    if times.len() < 2 {
        return None;
    }
    let mut diffs: Vec<f64> = times.windows(2).map(|w| w[1] - w[0]).collect();
    diffs.sort_by(f64::total_cmp);
    let median = diffs[diffs.len() / 2];
    if median > 0.0 && median.is_finite() {
        Some(1.0 / median)
    } else {
        None
    }
}

/// Writes channels as columns with a header of labels.
pub fn write_series_csv<W: Write>(writer: W, channels: &[&TimeSeries]) -> Result<()> {
    if channels.is_empty() {
        return Err(Error::invalid("no channels to write"));
    }
    let n = channels[0].len();
    if channels.iter().any(|c| c.len() != n) {
        return Err(Error::invalid("channel lengths differ"));
    }
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(channels.iter().map(|c| c.label()))
        .map_err(csv_io_error)?;
    for i in 0..n {
        wtr.write_record(channels.iter().map(|c| fmt_float(c.samples()[i])))
            .map_err(csv_io_error)?;
    }
    wtr.flush()?;
    Ok(())
}

/// Long-format decomposition export: `channel,imf_index,sample_index,value`,
/// with the residual at `imf_index = -1`.
pub fn write_decomposition_csv<W: Write>(writer: W, d: &Decomposition) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(["channel", "imf_index", "sample_index", "value"])
        .map_err(csv_io_error)?;
    for c in 0..d.channel_count() {
        for k in 0..d.imf_count() {
            for (i, v) in d.imf(c, k).iter().enumerate() {
                wtr.write_record([
                    c.to_string(),
                    k.to_string(),
                    i.to_string(),
                    fmt_float(*v),
                ])
                .map_err(csv_io_error)?;
            }
        }
        for (i, v) in d.residual(c).iter().enumerate() {
            wtr.write_record([
                c.to_string(),
                "-1".to_string(),
                i.to_string(),
                fmt_float(*v),
            ])
            .map_err(csv_io_error)?;
        }
    }
    wtr.flush()?;
    Ok(())
}

fn csv_io_error(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}
