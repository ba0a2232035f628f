//! Flat-file formats: long-format spectrum CSV, crossing-report CSV and JSON.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{QrmError, Result};
use crate::scan::{CrossingRow, SpectrumScan};

pub const SPECTRUM_HEADER: [&str; 4] = ["axis_value", "method", "level_index", "energy"];
pub const CROSSING_HEADER: [&str; 5] = ["n", "g_star", "energy", "residual", "exact_gap"];

/// One line of the long-format spectrum table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRecord {
    pub axis_value: f64,
    pub method: String,
    pub level_index: usize,
    pub energy: f64,
}

/// 17 significant digits, enough to recover any `f64` exactly.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn csv_err(e: csv::Error) -> QrmError {
    QrmError::Format(e.to_string())
}

/// Flattens a scan grid point by grid point, methods in table order, levels ascending.
pub fn scan_records(scan: &SpectrumScan) -> Vec<SpectrumRecord> {
    let mut out = Vec::with_capacity(scan.grid.len() * scan.table.len() * scan.levels);
    for (i, &value) in scan.grid.iter().enumerate() {
        for t in &scan.table {
            for (level_index, level) in t.rows[i].iter().enumerate() {
                out.push(SpectrumRecord {
                    axis_value: value,
                    method: t.method.to_string(),
                    level_index,
                    energy: level.energy,
                });
            }
        }
    }
    out
}

pub fn write_spectrum_csv<W: Write>(records: &[SpectrumRecord], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(SPECTRUM_HEADER).map_err(csv_err)?;
    for r in records {
        w.write_record([
            format_float(r.axis_value),
            r.method.clone(),
            r.level_index.to_string(),
            format_float(r.energy),
        ])
        .map_err(csv_err)?;
    }
    w.flush().map_err(|e| QrmError::Format(e.to_string()))
}

pub fn read_spectrum_csv<R: Read>(reader: R) -> Result<Vec<SpectrumRecord>> {
    let mut r = csv::Reader::from_reader(reader);
    let header = r.headers().map_err(csv_err)?;
    if header.iter().ne(SPECTRUM_HEADER) {
        return Err(QrmError::Format(format!("unexpected header {header:?}")));
    }
    r.deserialize().map(|rec| rec.map_err(csv_err)).collect()
}

pub fn write_crossing_csv<W: Write>(rows: &[CrossingRow], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(CROSSING_HEADER).map_err(csv_err)?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            format_float(r.g_star),
            format_float(r.energy),
            format_float(r.residual),
            r.exact_gap.map(format_float).unwrap_or_default(),
        ])
        .map_err(csv_err)?;
    }
    w.flush().map_err(|e| QrmError::Format(e.to_string()))
}

pub fn scan_json(scan: &SpectrumScan) -> Result<String> {
    serde_json::to_string_pretty(scan).map_err(|e| QrmError::Format(e.to_string()))
}

/// Creates `path` and hands a buffered writer to `body`.
pub fn write_file<F>(path: &Path, body: F) -> Result<()>
where
    F: FnOnce(&mut BufWriter<File>) -> Result<()>,
{
    let io_err = |source| QrmError::Io {
        path: path.display().to_string(),
        source,
    };
    let file = File::create(path).map_err(io_err)?;
    let mut w = BufWriter::new(file);
    body(&mut w)?;
    w.flush().map_err(io_err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::Method;
    use crate::params::ModelParams;
    use crate::scan::{parse_range, run_scan, Axis, ScanRequest};
    use proptest::prelude::*;

    fn sample_scan() -> SpectrumScan {
        let req = ScanRequest::new(
            Axis::G,
            parse_range("0:1.5:7").unwrap(),
            ModelParams { delta: 1.2, omega: 1.0, g: 0.0 },
            vec![Method::Exact, Method::Aa, Method::GaaK],
            5,
        );
        run_scan(&req).unwrap()
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let scan = sample_scan();
        let records = scan_records(&scan);
        let mut buf = Vec::new();
        write_spectrum_csv(&records, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("axis_value,method,level_index,energy\n"));
        let back = read_spectrum_csv(buf.as_slice()).unwrap();
        assert_eq!(back, records);
        for (i, _) in scan.grid.iter().enumerate() {
            for t in &scan.table {
                for (k, lvl) in t.rows[i].iter().enumerate() {
                    let rec = back
                        .iter()
                        .find(|r| r.axis_value == scan.grid[i] && r.method == t.method.as_str() && r.level_index == k)
                        .unwrap();
                    assert_eq!(rec.energy.to_bits(), lvl.energy.to_bits());
                }
            }
        }
    }

    #[test]
    fn rejects_wrong_header() {
        let text = "x,method,level_index,energy\n0,AA,0,1\n";
        assert!(read_spectrum_csv(text.as_bytes()).is_err());
    }

    #[test]
    fn crossing_csv_layout() {
        let rows = vec![CrossingRow { n: 2, g_star: 0.5, energy: 1.75, residual: 0.0, exact_gap: None }];
        let mut buf = Vec::new();
        write_crossing_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("n,g_star,energy,residual,exact_gap"));
        assert_eq!(
            lines.next(),
            Some("2,5.0000000000000000e-1,1.7500000000000000e0,0.0000000000000000e0,")
        );
    }

    #[test]
    fn json_mirrors_scan() {
        let scan = sample_scan();
        let text = scan_json(&scan).unwrap();
        let back: SpectrumScan = serde_json::from_str(&text).unwrap();
        assert_eq!(back, scan);
    }

    #[test]
    fn io_errors_name_the_path() {
        let err = write_file(Path::new("/nonexistent-dir/x.csv"), |_| Ok(())).unwrap_err();
        assert!(err.to_string().contains("/nonexistent-dir/x.csv"));
    }

    proptest! {
        #[test]
        fn float_text_round_trips(v in proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL | proptest::num::f64::ZERO) {
            let s = format_float(v);
            prop_assert_eq!(s.parse::<f64>().unwrap().to_bits(), v.to_bits());
        }
    }
}
