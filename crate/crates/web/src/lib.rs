//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export returns a flat `Float64Array` so the page can plot without
//! any serialization layer. The `*_values` functions are the native
//! counterparts used by the tests.

use wasm_bindgen::prelude::*;

use qrm_core::scan::method_levels;
use qrm_core::{find_crossings, normalized_constraint, Method, ModelParams};

/// Convergence tolerance of the exact solver inside the demo.
const DEMO_TOL: f64 = 1e-9;
pub const MAX_POINTS: usize = 2001;

fn grid(g_max: f64, points: usize) -> Result<Vec<f64>, String> {
    if !(2..=MAX_POINTS).contains(&points) {
        return Err(format!("points must be in 2..={MAX_POINTS}, got {points}"));
    }
    if !(g_max > 0.0) {
        return Err(format!("g_max must be positive, got {g_max}"));
    }
    let step = g_max / (points - 1) as f64;
    Ok((0..points).map(|i| i as f64 * step).collect())
}

/// Row-major `points × levels` energies of `method` for g ∈ [0, g_max].
pub fn spectrum_values(
    method: &str,
    delta: f64,
    omega: f64,
    g_max: f64,
    points: usize,
    levels: usize,
) -> Result<Vec<f64>, String> {
    let method: Method = method.parse().map_err(|e| format!("{e}"))?;
    let template = ModelParams::new(delta, omega, 0.0).map_err(|e| e.to_string())?;
    let mut out = Vec::with_capacity(points * levels);
    for g in grid(g_max, points)? {
        let row = method_levels(method, &template.with_g(g), levels, DEMO_TOL).map_err(|e| e.to_string())?;
        out.extend(row.iter().map(|l| l.energy));
    }
    Ok(out)
}

/// Juddian points of pairs `1..=n_max` as `(n, g*, energy)` triples.
pub fn juddian_values(n_max: usize, delta: f64, omega: f64) -> Result<Vec<f64>, String> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for p in find_crossings(n, delta, omega).map_err(|e| e.to_string())? {
            out.extend([n as f64, p.g_star, p.energy]);
        }
    }
    Ok(out)
}

/// `K_n(g, Δ)` sampled on g ∈ [0, g_max] (ω = 1).
pub fn constraint_values(n: usize, delta: f64, g_max: f64, points: usize) -> Result<Vec<f64>, String> {
    grid(g_max, points)?
        .into_iter()
        .map(|g| {
            let p = ModelParams::new(delta, 1.0, g).map_err(|e| e.to_string())?;
            normalized_constraint(n, &p).map_err(|e| e.to_string())
        })
        .collect()
}

#[wasm_bindgen]
pub fn spectrum(
    method: &str,
    delta: f64,
    omega: f64,
    g_max: f64,
    points: usize,
    levels: usize,
) -> Result<Vec<f64>, JsError> {
    spectrum_values(method, delta, omega, g_max, points, levels).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn juddian_points(n_max: usize, delta: f64, omega: f64) -> Result<Vec<f64>, JsError> {
    juddian_values(n_max, delta, omega).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn constraint_curve(n: usize, delta: f64, g_max: f64, points: usize) -> Result<Vec<f64>, JsError> {
    constraint_values(n, delta, g_max, points).map_err(|e| JsError::new(&e))
}
