//! WebAssembly bindings for the static demo page in `www/`.

use std::collections::BTreeMap;
use std::fmt::Write;

use kr_core::admissible::{admissible_set, display_name};
use kr_core::local_model::{census, SignatureIndex, StandardChainContext};
use kr_core::strata::{supersingular_summary, MassParams};
use kr_core::weyl::hasse_diagram;
use serde_json::json;
use wasm_bindgen::prelude::*;

const COLUMN: f64 = 110.0;
const ROW: f64 = 90.0;
const MARGIN: f64 = 40.0;

/// Largest genus the demo will draw.
pub const MAX_GENUS: usize = 3;

/// Bruhat covers of the admissible set as an SVG document, one row per length.
pub fn hasse_svg_string(g: usize) -> Result<String, String> {
    if !(1..=MAX_GENUS).contains(&g) {
        return Err(format!("genus must be between 1 and {MAX_GENUS}, got {g}"));
    }
    let table = admissible_set(g).map_err(|e| e.to_string())?;
    let elements: Vec<_> = table.elements().cloned().collect();
    let diagram = hasse_diagram(&elements).map_err(|e| e.to_string())?;

    let mut rows: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (i, x) in diagram.nodes.iter().enumerate() {
        rows.entry(x.length()).or_default().push(i);
    }
    let widest = rows.values().map(Vec::len).max().unwrap_or(1) as f64;
    let top = rows.keys().copied().max().unwrap_or(0) as f64;
    let width = 2.0 * MARGIN + (widest - 1.0) * COLUMN;
    let height = 2.0 * MARGIN + top * ROW;

    let mut pos = vec![(0.0, 0.0); diagram.nodes.len()];
    for (&len, members) in &rows {
        let offset = (widest - members.len() as f64) * COLUMN / 2.0;
        for (k, &i) in members.iter().enumerate() {
            pos[i] = (MARGIN + offset + k as f64 * COLUMN, height - MARGIN - f64::from(len) * ROW);
        }
    }

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="monospace" font-size="11">"#
    );
    for &(lo, hi) in &diagram.edges {
        let ((x1, y1), (x2, y2)) = (pos[lo], pos[hi]);
        let _ = writeln!(svg, r##"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#889"/>"##);
    }
    for (i, x) in diagram.nodes.iter().enumerate() {
        let (cx, cy) = pos[i];
        let name = if g == 2 { display_name(x) } else { x.to_string() };
        let _ = writeln!(
            svg,
            r##"<g><title>{x} length {}</title><circle cx="{cx}" cy="{cy}" r="5" fill="#246"/><text x="{cx}" y="{}" text-anchor="middle">{}</text></g>"##,
            x.length(),
            cy - 9.0,
            if g == 2 { name } else { String::new() },
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Supersingular counts for genus 2, Iwahori level, as JSON.
pub fn mass_summary_json(p: u64, level: u64) -> Result<String, String> {
    let mp = MassParams::new(p, level).map_err(|e| e.to_string())?;
    let summary = supersingular_summary(&mp).map_err(|e| e.to_string())?;
    serde_json::to_string(&summary).map_err(|e| e.to_string())
}

/// Per-stratum point counts of the genus-2 local model over `F_q`, as JSON.
pub fn census_json(q: u32) -> Result<String, String> {
    if q > 5 {
        return Err(format!("q = {q} is too large for an in-browser census"));
    }
    let ctx = StandardChainContext::new(2, q).map_err(|e| e.to_string())?;
    let table = admissible_set(2).map_err(|e| e.to_string())?;
    let index = SignatureIndex::new(&table, &ctx).map_err(|e| e.to_string())?;
    let report = census(&table, &index).map_err(|e| e.to_string())?;
    let rows: Vec<_> = report
        .rows
        .iter()
        .map(|r| json!({ "name": r.name, "length": r.length, "expected": r.expected, "observed": r.observed }))
        .collect();
    Ok(json!({
        "q": q,
        "rows": rows,
        "total_expected": report.total_expected,
        "total_observed": report.total_observed,
        "consistent": report.is_consistent(),
    })
    .to_string())
}

#[wasm_bindgen]
pub fn hasse_svg(g: usize) -> Result<String, JsError> {
    hasse_svg_string(g).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn mass_summary(p: u32, level: u32) -> Result<String, JsError> {
    mass_summary_json(p.into(), level.into()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn census_counts(q: u32) -> Result<String, JsError> {
    census_json(q).map_err(|e| JsError::new(&e))
}
