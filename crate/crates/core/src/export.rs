//! JSON and CSV output. Every file is written to a temporary sibling and
//! renamed into place.

use std::io::Write;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lti::RationalTF;
use crate::peaks::PeakList;
use crate::simulate::TimeSeries;

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err(path))?;
    tmp.write_all(bytes).map_err(io_err(path))?;
    tmp.as_file().sync_all().map_err(io_err(path))?;
    tmp.persist(path).map_err(|e| io_err(path)(e.error))?;
    Ok(())
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    write_atomic(path, to_json(value)?.as_bytes())
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    Ok(serde_json::from_str(&text)?)
}

/// One row of the frequency-response CSV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FreqRow {
    pub freq_rad_s: f64,
    pub gain: f64,
    pub gain_db: f64,
    pub phase_rad: f64,
    pub pcr: f64,
}

pub const FREQ_HEADER: [&str; 5] = ["freq_rad_s", "gain", "gain_db", "phase_rad", "pcr"];
pub const TIME_HEADER: [&str; 2] = ["t", "y"];

/// Log-spaced response over the peak search range with the peak frequencies
/// inserted exactly. Phase and PCR are NaN where the phase is undefined.
pub fn frequency_table(g: &RationalTF, peaks: &PeakList, points: usize) -> Result<Vec<FreqRow>> {
    let (lo, hi) = (peaks.grid.lo.ln(), peaks.grid.hi.ln());
    let n = points.max(2);
    let mut freqs: Vec<f64> = (0..n)
        .map(|i| (lo + (hi - lo) * i as f64 / (n - 1) as f64).exp())
        .collect();
    freqs.extend(peaks.peaks.iter().map(|p| p.freq));
    freqs.sort_by(f64::total_cmp);
    freqs.dedup();
    freqs
        .into_iter()
        .map(|w| {
            let v = g.freq_response(w)?;
            let (phase_rad, pcr) = g.phase_and_pcr(w).unwrap_or((f64::NAN, f64::NAN));
            Ok(FreqRow {
                freq_rad_s: w,
                gain: v.norm(),
                gain_db: 20.0 * v.norm().log10(),
                phase_rad,
                pcr,
            })
        })
        .collect()
}

fn csv_bytes<T: Serialize>(path: &Path, header: &[&str], rows: &[T]) -> Result<Vec<u8>> {
    let csv_err = |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    w.write_record(header).map_err(csv_err)?;
    for r in rows {
        w.serialize(r).map_err(csv_err)?;
    }
    w.into_inner().map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e.into_error(),
    })
}

pub fn write_freq_csv(path: &Path, rows: &[FreqRow]) -> Result<()> {
    write_atomic(path, &csv_bytes(path, &FREQ_HEADER, rows)?)
}

pub fn write_time_csv(path: &Path, ts: &TimeSeries) -> Result<()> {
    let rows: Vec<(f64, f64)> = ts.t.iter().copied().zip(ts.y.iter().copied()).collect();
    write_atomic(path, &csv_bytes(path, &TIME_HEADER, &rows)?)
}

/// Any serializable row type with its field names as the header.
pub fn write_rows_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let csv_err = |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e.into_error(),
    })?;
    write_atomic(path, &bytes)
}

pub fn read_freq_csv(path: &Path) -> Result<Vec<FreqRow>> {
    let csv_err = |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut r = csv::Reader::from_path(path).map_err(csv_err)?;
    r.deserialize()
        .collect::<std::result::Result<Vec<FreqRow>, _>>()
        .map_err(csv_err)
}
