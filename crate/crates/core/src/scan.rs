//! Parameter scans over g or Δ with per-method level tables and error metrics.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::approx::{grwa_spectrum, pair, GrwaBasis, Method, SPECTRUM_POLY};
use crate::crossings::find_crossings;
use crate::error::{QrmError, Result};
use crate::exact::{exact_spectrum, Parity};
use crate::params::ModelParams;

/// Largest number of levels a scan may request.
pub const MAX_SCAN_LEVELS: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    G,
    Delta,
}

impl Axis {
    pub fn as_str(self) -> &'static str {
        match self {
            Axis::G => "g",
            Axis::Delta => "delta",
        }
    }

    pub fn apply(self, template: &ModelParams, value: f64) -> ModelParams {
        match self {
            Axis::G => template.with_g(value),
            Axis::Delta => template.with_delta(value),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Axis {
    type Err = QrmError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "g" => Ok(Axis::G),
            "delta" | "d" => Ok(Axis::Delta),
            other => Err(QrmError::InvalidArgument(format!("unknown axis `{other}`"))),
        }
    }
}

/// Uniform grid from `a:b:points`.
pub fn parse_range(spec: &str) -> Result<Vec<f64>> {
    let bad = || QrmError::InvalidArgument(format!("expected a:b:points, got `{spec}`"));
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let a: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let b: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let points: usize = parts[2].trim().parse().map_err(|_| bad())?;
    uniform_grid(a, b, points)
}

pub fn uniform_grid(a: f64, b: f64, points: usize) -> Result<Vec<f64>> {
    match points {
        0 => Err(QrmError::InvalidArgument("grid needs at least one point".into())),
        1 => Ok(vec![a]),
        _ if !(b > a) => Err(QrmError::InvalidArgument(format!(
            "grid end {b} must exceed start {a}"
        ))),
        _ => {
            let last = (points - 1) as f64;
            Ok((0..points)
                .map(|i| a + (b - a) * (i as f64 / last))
                .collect())
        }
    }
}

/// What identifies a level within its method.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LevelLabel {
    /// Exact level with its parity sector.
    Parity { parity: Parity },
    /// Lower (`upper = false`) or upper member of approximate pair `n`.
    Pair { n: usize, upper: bool },
    /// GRWA levels mix neighbouring pairs.
    Ladder,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub energy: f64,
    pub label: LevelLabel,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRequest {
    pub axis: Axis,
    pub grid: Vec<f64>,
    /// Template; the scanned parameter is overwritten per grid point.
    pub fixed: ModelParams,
    pub methods: Vec<Method>,
    pub levels: usize,
    /// Convergence tolerance of the exact solver.
    pub tol: f64,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl ScanRequest {
    pub fn new(axis: Axis, grid: Vec<f64>, fixed: ModelParams, methods: Vec<Method>, levels: usize) -> Self {
        Self {
            axis,
            grid,
            fixed,
            methods,
            levels,
            tol: 1e-10,
            jobs: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.grid.is_empty() {
            return Err(QrmError::InvalidArgument("empty grid".into()));
        }
        if self.grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(QrmError::InvalidArgument("grid must be strictly increasing".into()));
        }
        if self.methods.is_empty() {
            return Err(QrmError::InvalidArgument("no methods requested".into()));
        }
        if self.levels == 0 || self.levels > MAX_SCAN_LEVELS {
            return Err(QrmError::InvalidArgument(format!(
                "levels must be in 1..={MAX_SCAN_LEVELS}, got {}",
                self.levels
            )));
        }
        if self.jobs == Some(0) {
            return Err(QrmError::InvalidArgument("jobs must be positive".into()));
        }
        for &v in &self.grid {
            self.axis.apply(&self.fixed, v).validate()?;
        }
        Ok(())
    }
}

/// Error of one method against the exact levels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorMetrics {
    pub max_abs: f64,
    pub rms: f64,
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodTable {
    pub method: Method,
    /// One row per grid point, each with `levels` ascending entries.
    pub rows: Vec<Vec<Level>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumScan {
    pub axis: Axis,
    pub grid: Vec<f64>,
    pub fixed: ModelParams,
    pub methods: Vec<Method>,
    pub levels: usize,
    pub table: Vec<MethodTable>,
    pub metrics: BTreeMap<Method, ErrorMetrics>,
}

impl SpectrumScan {
    pub fn rows(&self, method: Method) -> Option<&[Vec<Level>]> {
        self.table
            .iter()
            .find(|t| t.method == method)
            .map(|t| t.rows.as_slice())
    }

    /// Max-abs and RMS error of `method` against EXACT over the given level indices.
    pub fn error_metrics(&self, method: Method, levels: Range<usize>) -> Option<ErrorMetrics> {
        let exact = self.rows(Method::Exact)?;
        let approx = self.rows(method)?;
        let mut max_abs: f64 = 0.0;
        let mut sum_sq = 0.0;
        let mut samples = 0;
        for (e_row, a_row) in exact.iter().zip(approx) {
            for idx in levels.clone() {
                if let (Some(e), Some(a)) = (e_row.get(idx), a_row.get(idx)) {
                    let err = (a.energy - e.energy).abs();
                    max_abs = max_abs.max(err);
                    sum_sq += err * err;
                    samples += 1;
                }
            }
        }
        if samples == 0 {
            return None;
        }
        Some(ErrorMetrics {
            max_abs,
            rms: (sum_sq / samples as f64).sqrt(),
            samples,
        })
    }
}

/// Number of approximate pairs evaluated so the lowest `levels` sorted energies are covered.
fn pairs_needed(levels: usize, params: &ModelParams) -> usize {
    let margin = (params.delta / params.omega).ceil() as usize + 2;
    (levels.div_ceil(2) + margin).min(SPECTRUM_POLY.max_order + 1)
}

/// The lowest `levels` energies of one method at one parameter point.
pub fn method_levels(method: Method, params: &ModelParams, levels: usize, tol: f64) -> Result<Vec<Level>> {
    let mut out: Vec<Level> = match method {
        Method::Exact => exact_spectrum(params, levels, tol)?
            .energies
            .into_iter()
            .map(|l| Level {
                energy: l.energy,
                label: LevelLabel::Parity { parity: l.parity },
            })
            .collect(),
        Method::Aa | Method::GaaK | Method::GaaL => {
            let mut all = Vec::new();
            for n in 0..pairs_needed(levels, params) {
                let p = pair(method, n, params)?;
                all.push(Level {
                    energy: p.e_minus,
                    label: LevelLabel::Pair { n, upper: false },
                });
                all.push(Level {
                    energy: p.e_plus,
                    label: LevelLabel::Pair { n, upper: true },
                });
            }
            all
        }
        Method::Grwa | Method::GrwaGaa => {
            let basis = if method == Method::Grwa {
                GrwaBasis::Aa
            } else {
                GrwaBasis::Gaa
            };
            grwa_spectrum(params, pairs_needed(levels, params), basis)?
                .into_iter()
                .map(|energy| Level {
                    energy,
                    label: LevelLabel::Ladder,
                })
                .collect()
        }
    };
    out.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    out.truncate(levels);
    Ok(out)
}

fn evaluate_point(request: &ScanRequest, methods: &[Method], value: f64) -> Result<Vec<Vec<Level>>> {
    let params = request.axis.apply(&request.fixed, value);
    methods
        .iter()
        .map(|&m| method_levels(m, &params, request.levels, request.tol))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| QrmError::ScanPoint {
            axis: request.axis.as_str(),
            value,
            source: Box::new(e),
        })
}

pub fn run_scan(request: &ScanRequest) -> Result<SpectrumScan> {
    request.validate()?;
    let mut methods = request.methods.clone();
    methods.sort();
    methods.dedup();

    let compute = || -> Vec<Result<Vec<Vec<Level>>>> {
        request
            .grid
            .par_iter()
            .map(|&v| evaluate_point(request, &methods, v))
            .collect()
    };
    let per_point = match request.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| QrmError::InvalidArgument(format!("cannot start worker pool: {e}")))?
            .install(compute),
        None => compute(),
    };

    let mut table: Vec<MethodTable> = methods
        .iter()
        .map(|&method| MethodTable {
            method,
            rows: Vec::with_capacity(request.grid.len()),
        })
        .collect();
    for point in per_point {
        for (slot, row) in table.iter_mut().zip(point?) {
            if row.len() != request.levels {
                return Err(QrmError::InvalidArgument(format!(
                    "{} produced {} of {} levels",
                    slot.method,
                    row.len(),
                    request.levels
                )));
            }
            slot.rows.push(row);
        }
    }

    let mut scan = SpectrumScan {
        axis: request.axis,
        grid: request.grid.clone(),
        fixed: request.fixed,
        methods: methods.clone(),
        levels: request.levels,
        table,
        metrics: BTreeMap::new(),
    };
    if methods.contains(&Method::Exact) {
        for &m in &methods {
            if let Some(metrics) = scan.error_metrics(m, 0..request.levels) {
                scan.metrics.insert(m, metrics);
            }
        }
    }
    Ok(scan)
}

/// `QRM_JOBS`, when set to a positive integer, overrides the command-line value.
pub fn resolve_jobs(flag: Option<usize>, env_value: Option<&str>) -> Result<Option<usize>> {
    match env_value.map(str::trim).filter(|s| !s.is_empty()) {
        Some(raw) => match raw.parse::<usize>() {
            Ok(jobs) if jobs > 0 => Ok(Some(jobs)),
            _ => Err(QrmError::InvalidArgument(format!(
                "QRM_JOBS must be a positive integer, got `{raw}`"
            ))),
        },
        None => Ok(flag),
    }
}

/// One Juddian point with optional exact-diagonalization confirmation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossingRow {
    pub n: usize,
    pub g_star: f64,
    pub energy: f64,
    pub residual: f64,
    /// Smallest opposite-parity exact splitting near `energy`.
    pub exact_gap: Option<f64>,
}

pub const MAX_REPORT_ORDER: usize = 10;

pub fn report_crossings(n_max: usize, delta: f64, omega: f64, refine_exact: bool) -> Result<Vec<CrossingRow>> {
    if n_max > MAX_REPORT_ORDER {
        return Err(QrmError::InvalidArgument(format!(
            "n_max must be at most {MAX_REPORT_ORDER}, got {n_max}"
        )));
    }
    let mut rows = Vec::new();
    for n in 0..=n_max {
        for point in find_crossings(n, delta, omega)? {
            let exact_gap = if refine_exact {
                Some(exact_gap_near(&point.params(), point.energy)?)
            } else {
                None
            };
            rows.push(CrossingRow {
                n,
                g_star: point.g_star,
                energy: point.energy,
                residual: point.residual,
                exact_gap,
            });
        }
    }
    Ok(rows)
}

/// Distance between the even- and odd-parity exact levels closest to `energy`.
pub fn exact_gap_near(params: &ModelParams, energy: f64) -> Result<f64> {
    let below = ((energy + params.g * params.g / params.omega) / params.omega).max(0.0);
    let levels = (2.0 * below).ceil() as usize + 6;
    let spectrum = exact_spectrum(params, levels, 1e-12)?;
    let nearest = |parity: Parity| {
        spectrum
            .energies
            .iter()
            .filter(|l| l.parity == parity)
            .map(|l| l.energy)
            .min_by(|a, b| (a - energy).abs().total_cmp(&(b - energy).abs()))
    };
    match (nearest(Parity::Even), nearest(Parity::Odd)) {
        (Some(e), Some(o)) => Ok((e - o).abs()),
        _ => Err(QrmError::InvalidArgument(
            "exact spectrum lacks a level of each parity".into(),
        )),
    }
}
