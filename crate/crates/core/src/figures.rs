//! Datasets behind the spectrum figures, in the long CSV format.
//!
//! | id  | axis         | fixed              | methods            | default levels |
//! |-----|--------------|--------------------|--------------------|----------------|
//! | 2a  | g ∈ [0, 3]   | Δ/ω = 0.7          | EXACT, AA, GAA_K   | 12             |
//! | 2b  | g ∈ [0, 3]   | Δ/ω = 1.2          | EXACT, AA, GAA_K   | 12             |
//! | 2c  | g ∈ [0, 3]   | Δ/ω = 2            | EXACT, AA, GAA_K   | 12             |
//! | 3a  | Δ ∈ [0, 6]   | g/ω = 0            | EXACT, AA, GAA_K   | 12             |
//! | 3b  | Δ ∈ [0, 6]   | g/ω = 0.5          | EXACT, AA, GAA_K   | 8              |
//! | 3c  | Δ ∈ [0, 10]  | g/ω = 0.5          | EXACT, AA, GAA_K   | 24             |
//! | 4   | g ∈ [0, 3]   | Δ/ω ∈ {0.7, 1.2, 2, 3} | EXACT, AA, GAA_K, GAA_L | pair n = 5 |
//!
//! Figure 4 holds four panels in one file; its method column reads
//! `METHOD@delta=<Δ/ω>` and its level indices are 10 (lower) and 11 (upper).

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::approx::{pair, Method};
use crate::error::{QrmError, Result};
use crate::output::{scan_records, write_file, write_spectrum_csv, SpectrumRecord};
use crate::params::ModelParams;
use crate::scan::{run_scan, uniform_grid, Axis, ScanRequest};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FigureId {
    Fig2a,
    Fig2b,
    Fig2c,
    Fig3a,
    Fig3b,
    Fig3c,
    Fig4,
}

impl FigureId {
    pub const ALL: [FigureId; 7] = [
        FigureId::Fig2a,
        FigureId::Fig2b,
        FigureId::Fig2c,
        FigureId::Fig3a,
        FigureId::Fig3b,
        FigureId::Fig3c,
        FigureId::Fig4,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FigureId::Fig2a => "2a",
            FigureId::Fig2b => "2b",
            FigureId::Fig2c => "2c",
            FigureId::Fig3a => "3a",
            FigureId::Fig3b => "3b",
            FigureId::Fig3c => "3c",
            FigureId::Fig4 => "4",
        }
    }

    pub fn default_levels(self) -> usize {
        match self {
            FigureId::Fig3b => 8,
            FigureId::Fig3c => 24,
            _ => 12,
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FigureId {
    type Err = QrmError;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().trim_start_matches("fig").to_ascii_lowercase();
        FigureId::ALL
            .into_iter()
            .find(|f| f.as_str() == key)
            .ok_or_else(|| QrmError::InvalidArgument(format!("unknown figure `{s}`")))
    }
}

/// Pair shown in figure 4.
pub const FIG4_PAIR: usize = 5;
/// Δ/ω of the four figure 4 panels.
pub const FIG4_DELTAS: [f64; 4] = [0.7, 1.2, 2.0, 3.0];

const STANDARD_METHODS: [Method; 3] = [Method::Exact, Method::Aa, Method::GaaK];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FigureOptions {
    /// Overrides [`FigureId::default_levels`] (ignored for figure 4).
    pub levels: Option<usize>,
    pub jobs: Option<usize>,
}

fn unit(delta: f64, g: f64) -> ModelParams {
    ModelParams { delta, omega: 1.0, g }
}

/// The scan behind figures 2 and 3.
pub fn figure_request(id: FigureId, options: &FigureOptions) -> Result<Option<ScanRequest>> {
    let (axis, grid, fixed) = match id {
        FigureId::Fig2a => (Axis::G, uniform_grid(0.0, 3.0, 301)?, unit(0.7, 0.0)),
        FigureId::Fig2b => (Axis::G, uniform_grid(0.0, 3.0, 301)?, unit(1.2, 0.0)),
        FigureId::Fig2c => (Axis::G, uniform_grid(0.0, 3.0, 301)?, unit(2.0, 0.0)),
        FigureId::Fig3a => (Axis::Delta, uniform_grid(0.0, 6.0, 241)?, unit(0.0, 0.0)),
        FigureId::Fig3b => (Axis::Delta, uniform_grid(0.0, 6.0, 241)?, unit(0.0, 0.5)),
        FigureId::Fig3c => (Axis::Delta, uniform_grid(0.0, 10.0, 401)?, unit(0.0, 0.5)),
        FigureId::Fig4 => return Ok(None),
    };
    let levels = options.levels.unwrap_or_else(|| id.default_levels());
    let mut req = ScanRequest::new(axis, grid, fixed, STANDARD_METHODS.to_vec(), levels);
    req.jobs = options.jobs;
    Ok(Some(req))
}

fn fig4_records(options: &FigureOptions) -> Result<Vec<SpectrumRecord>> {
    let lower = 2 * FIG4_PAIR;
    let mut out = Vec::new();
    for delta in FIG4_DELTAS {
        let mut req = ScanRequest::new(
            Axis::G,
            uniform_grid(0.0, 3.0, 301)?,
            unit(delta, 0.0),
            vec![Method::Exact],
            lower + 2,
        );
        req.jobs = options.jobs;
        let exact = run_scan(&req)?;
        let rows = exact.rows(Method::Exact).unwrap_or_default();
        for (i, &g) in exact.grid.iter().enumerate() {
            let params = unit(delta, g);
            let mut push = |method: Method, e_lo: f64, e_hi: f64| {
                let label = format!("{method}@delta={delta}");
                for (level_index, energy) in [(lower, e_lo), (lower + 1, e_hi)] {
                    out.push(SpectrumRecord {
                        axis_value: g,
                        method: label.clone(),
                        level_index,
                        energy,
                    });
                }
            };
            push(Method::Exact, rows[i][lower].energy, rows[i][lower + 1].energy);
            for method in [Method::Aa, Method::GaaK, Method::GaaL] {
                let p = pair(method, FIG4_PAIR, &params)?;
                push(method, p.e_minus, p.e_plus);
            }
        }
    }
    Ok(out)
}

pub fn figure_records(id: FigureId, options: &FigureOptions) -> Result<Vec<SpectrumRecord>> {
    match figure_request(id, options)? {
        Some(req) => Ok(scan_records(&run_scan(&req)?)),
        None => fig4_records(options),
    }
}

/// Writes the CSV dataset of figure `id` to `path`.
pub fn emit_figure_data(id: FigureId, path: &Path, options: &FigureOptions) -> Result<()> {
    let records = figure_records(id, options)?;
    write_file(path, |w| write_spectrum_csv(&records, w))
}
