//! Browser bindings. Every call takes and returns plain strings; results are JSON.

use lattice_fillings::enumerate::delta_lattice;
use lattice_fillings::floer::{d_table as floer_d_table, format_rational, KnotSpec};
use lattice_fillings::names::LatticeName;
use lattice_fillings::obstruction::classify_fillings;
use lattice_fillings::recognize::recognize;
use lattice_fillings::roots::root_decomposition;
use lattice_fillings::Lattice;
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest `n` the page classifies up to. The browser runs single-threaded and the
/// cinquefoil's fourth step alone takes several seconds there.
pub fn max_nmax(knot: &str) -> u32 {
    if knot == "T25" { 3 } else { 8 }
}

fn parse_lattice(input: &str) -> Result<Lattice, String> {
    let input = input.trim();
    let parsed = if input.starts_with("gram:") || input.starts_with("name:") {
        Lattice::from_text(input)
    } else {
        LatticeName::parse(input).and_then(|n| n.make())
    };
    parsed.map_err(|e| e.to_string())
}

pub fn info_json(input: &str) -> Result<String, String> {
    let l = parse_lattice(input)?;
    let s = l.signature();
    let mut out = json!({
        "rank": l.rank(),
        "det": l.det().to_string(),
        "signature": [s.positive, s.negative],
        "even": l.is_even(),
        "gram": l.gram_rows(),
    });
    if l.is_positive_definite() {
        let err = |e: lattice_fillings::Error| e.to_string();
        out["root_type"] = json!(root_decomposition(&l).map_err(err)?.to_string());
        out["delta"] = json!(format_rational(&delta_lattice(&l).map_err(err)?));
        out["recognized"] = json!(recognize(&l).ok().flatten().map(|n| n.pretty()));
    }
    Ok(out.to_string())
}

pub fn d_table_json(knot: &str, n: u32) -> Result<String, String> {
    let spec = KnotSpec::builtin(knot).map_err(|e| e.to_string())?;
    let t = floer_d_table(&spec, n as u64).map_err(|e| e.to_string())?;
    let d: Vec<String> = t.d.iter().map(format_rational).collect();
    Ok(json!({ "knot": spec.label, "n": n, "d": d, "delta": format_rational(&t.delta()) }).to_string())
}

pub fn classify_json(knot: &str, nmax: u32) -> Result<String, String> {
    let cap = max_nmax(knot);
    if nmax > cap {
        return Err(format!("the demo classifies {knot} up to n = {cap}"));
    }
    let spec = KnotSpec::builtin(knot).map_err(|e| e.to_string())?;
    let table = classify_fillings(&spec, nmax as u64).map_err(|e| e.to_string())?;
    let rows: Vec<_> = table
        .rows
        .iter()
        .map(|row| {
            json!({
                "n": row.n,
                "delta_y": format_rational(&row.delta_y),
                "kept": row.kept.iter().map(|f| f.label()).collect::<Vec<_>>(),
                "padding": row.kept.iter().filter(|f| f.flags.needs_unit_padding).map(|f| f.label()).collect::<Vec<_>>(),
                "excluded": row.discarded.iter().map(|f| f.label()).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(json!({ "knot": spec.label, "rows": rows }).to_string())
}

#[wasm_bindgen]
pub fn classify_limit(knot: &str) -> u32 {
    max_nmax(knot)
}

#[wasm_bindgen]
pub fn lattice_info(input: &str) -> Result<String, JsError> {
    info_json(input).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn d_table(knot: &str, n: u32) -> Result<String, JsError> {
    d_table_json(knot, n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn classify(knot: &str, nmax: u32) -> Result<String, JsError> {
    classify_json(knot, nmax).map_err(|e| JsError::new(&e))
}
