//! Browser bindings for the static demo page in `www/`.
//!
//! Each export returns a JSON string. The `*_json` functions hold the logic
//! and are plain Rust, so they can be tested natively.

use num_traits::ToPrimitive;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use hooktree::counting::{catalan, catalan_km, catalan_m};
use hooktree::enumerate::{km_trees, mary_trees, plane_forests};
use hooktree::hookpoly::{h_forest_closed, h_mary_closed};
use hooktree::poly::rational;
use hooktree::series::solve_c;
use hooktree::{HookMode, HookTable, PlaneTree, RationalPolynomial};

/// Largest family the page will draw.
pub const DRAW_CAP: u64 = 500;

fn structured(t: &PlaneTree) -> Value {
    serde_json::from_str(&t.to_structured()).expect("structured form is valid json")
}

fn hooks_in_preorder(table: &HookTable, vertices: usize) -> Vec<Option<usize>> {
    (0..vertices).map(|v| table.get(v)).collect()
}

/// Every structure of a family as nested arrays, with the hook length of each
/// counted vertex in preorder (`null` for uncounted vertices).
pub fn trees_json(family: &str, k: u32, m: u32, n: usize) -> Result<String, String> {
    let err = |e: hooktree::Error| e.to_string();
    let (count, items): (String, Vec<Value>) = match family {
        "mary" => {
            let trees = mary_trees(m, n, DRAW_CAP).map_err(err)?;
            let items = trees
                .iter()
                .map(|t| {
                    let table = t.hook_table(HookMode::InternalOnly);
                    json!({ "trees": [structured(t)], "hooks": hooks_in_preorder(&table, t.vertex_count()) })
                })
                .collect();
            (catalan_m(m as u64, n as u64).to_string(), items)
        }
        "km" => {
            let trees = km_trees(k, m, n, DRAW_CAP).map_err(err)?;
            let items = trees
                .iter()
                .map(|t| {
                    let crucial = t.crucial_vertices(m);
                    json!({ "trees": [structured(t)], "crucial": crucial })
                })
                .collect();
            (catalan_km(k as u64, m as u64, n as u64).to_string(), items)
        }
        "forest" => {
            let forests = plane_forests(n, DRAW_CAP).map_err(err)?;
            let items = forests
                .iter()
                .map(|f| {
                    let table = HookTable::forest(f);
                    json!({ "trees": f.iter().map(structured).collect::<Vec<_>>(), "hooks": hooks_in_preorder(&table, n) })
                })
                .collect();
            (catalan(n as u64).to_string(), items)
        }
        other => return Err(format!("unknown family {other:?}")),
    };
    Ok(json!({ "count": count, "items": items }).to_string())
}

fn to_f64(p: &RationalPolynomial, x: &hooktree::Rational) -> f64 {
    p.eval(x).to_f64().unwrap_or(f64::NAN)
}

/// Closed-form hook polynomial with exact coefficients, exact values at
/// x = 0..=4 and a float curve over [lo, hi] for plotting.
pub fn hookpoly_json(family: &str, m: u32, n: usize, lo: i64, hi: i64) -> Result<String, String> {
    let poly = match family {
        "mary" if m >= 1 => h_mary_closed(n, m),
        "mary" => return Err("arity must be at least 1".into()),
        "forest" => h_forest_closed(n),
        other => return Err(format!("unknown family {other:?}")),
    };
    if lo >= hi {
        return Err("empty plot window".into());
    }
    let steps = 200;
    let span = hi - lo;
    let curve: Vec<[f64; 2]> = (0..=steps)
        .map(|i| {
            let x = rational(lo * steps + span * i, steps);
            [x.to_f64().unwrap_or(f64::NAN), to_f64(&poly, &x)]
        })
        .collect();
    let values: Vec<String> = (0..=4).map(|x| poly.eval(&rational(x, 1)).to_string()).collect();
    Ok(json!({ "coeffs": poly.to_strings(), "display": poly.to_string(), "values": values, "curve": curve }).to_string())
}

/// Coefficients of C(z) = (1 + z C^m)^k next to the closed form.
pub fn series_json(k: u32, m: u32, order: usize) -> Result<String, String> {
    if order > 60 {
        return Err("order is limited to 60".into());
    }
    let series = solve_c(k, m, order);
    let rows: Vec<Value> = (0..=order)
        .map(|n| {
            let closed = catalan_km(k as u64, m as u64, n as u64);
            let coeff = series.coeff(n);
            json!({ "n": n, "series": coeff.to_string(), "closed": closed.to_string(), "agree": coeff.is_integer() && *coeff.numer() == closed })
        })
        .collect();
    Ok(json!({ "k": k, "m": m, "rows": rows }).to_string())
}

fn js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = enumerateTrees)]
pub fn enumerate_trees(family: &str, k: u32, m: u32, n: usize) -> Result<String, JsValue> {
    js(trees_json(family, k, m, n))
}

#[wasm_bindgen(js_name = hookPolynomial)]
pub fn hook_polynomial(family: &str, m: u32, n: usize, lo: i32, hi: i32) -> Result<String, JsValue> {
    js(hookpoly_json(family, m, n, lo as i64, hi as i64))
}

#[wasm_bindgen(js_name = kmSeries)]
pub fn km_series(k: u32, m: u32, order: usize) -> Result<String, JsValue> {
    js(series_json(k, m, order))
}
