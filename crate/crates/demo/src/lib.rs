//! wasm-bindgen exports for the static page in `www/`.
//!
//! Every export returns a flat `Float64Array`; the plain functions underneath
//! are ordinary Rust so they can be tested natively.

use wasm_bindgen::prelude::*;

use qmsa::asymptotics::hs_distance_cp_direct;
use qmsa::linalg::CirculantMatrix;
use qmsa::superop::{CpCirculantMap, CpToeplitzMap};
use qmsa::symbols::SymbolSequence;

/// Largest order the page may request for spectra and heatmaps.
pub const MAX_ORDER: usize = 24;
/// Largest order in a decay curve.
pub const MAX_CURVE_ORDER: usize = 1024;

fn symbol(spec: &str) -> Result<SymbolSequence, String> {
    let t = SymbolSequence::parse(spec).map_err(|e| e.to_string())?;
    if !t.is_nonnegative() {
        return Err("completely positive maps need non-negative coefficients".into());
    }
    Ok(t)
}

fn check_order(n: usize, max: usize) -> Result<(), String> {
    if n == 0 || n > max {
        Err(format!("n = {n} must lie in 1..={max}"))
    } else {
        Ok(())
    }
}

/// Eigenvalues of the Toeplitz (`circulant = false`) or circulant CP map,
/// as interleaved `re, im` pairs, block by block.
pub fn spectrum_points(spec: &str, n: usize, circulant: bool) -> Result<Vec<f64>, String> {
    check_order(n, MAX_ORDER)?;
    let t = symbol(spec)?.truncate(n);
    let rep = if circulant {
        CpCirculantMap::from_signed(CirculantMatrix::from_truncated(&t)).block_rep()
    } else {
        CpToeplitzMap::from_signed(t).block_rep()
    };
    let vals = rep.eigenvalues().map_err(|e| e.to_string())?;
    Ok(vals.iter().flat_map(|z| [z.re, z.im]).collect())
}

/// `[n, d_n, ...]` for `n = 2, 4, 8, ..., max_n`.
pub fn decay_points(spec: &str, max_n: usize) -> Result<Vec<f64>, String> {
    check_order(max_n, MAX_CURVE_ORDER)?;
    let t = symbol(spec)?;
    let mut out = Vec::new();
    let mut n = 2;
    while n <= max_n {
        out.push(n as f64);
        out.push(hs_distance_cp_direct(&t.truncate(n)));
        n *= 2;
    }
    Ok(out)
}

/// Entry magnitudes of the `n² × n²` block-diagonal matrix, row-major.
pub fn heatmap_values(spec: &str, n: usize, circulant: bool) -> Result<Vec<f64>, String> {
    check_order(n, MAX_ORDER)?;
    let t = symbol(spec)?.truncate(n);
    let dense = if circulant {
        CpCirculantMap::from_signed(CirculantMatrix::from_truncated(&t)).block_rep().to_dense()
    } else {
        CpToeplitzMap::from_signed(t).block_rep().to_dense()
    };
    let m = dense.nrows();
    Ok((0..m * m).map(|k| dense[(k / m, k % m)].norm()).collect())
}

#[wasm_bindgen]
pub fn spectrum(spec: &str, n: usize, circulant: bool) -> Result<Vec<f64>, JsError> {
    spectrum_points(spec, n, circulant).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn decay_curve(spec: &str, max_n: usize) -> Result<Vec<f64>, JsError> {
    decay_points(spec, max_n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn block_heatmap(spec: &str, n: usize, circulant: bool) -> Result<Vec<f64>, JsError> {
    heatmap_values(spec, n, circulant).map_err(|e| JsError::new(&e))
}
