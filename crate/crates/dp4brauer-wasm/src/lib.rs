//! Three operations of `dp4brauer` exported to the browser. Each returns a
//! JSON string; the plain `*_json` functions are the same code without the
//! JS boundary.

use dp4brauer::arith::QmodZ;
use dp4brauer::residue_symbols::{
    artin_cyclotomic, bad_places, cyclic_symbol_invariant, hilbert_qp, CyclicQuotient, CyclotomicQuotient, PlaceQ,
};
use dp4brauer::surface_lab::{evaluate_all_places, fixtures, RatPoint};
use num_rational::BigRational;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn rational(s: &str) -> Result<BigRational, String> {
    let x: BigRational = s.trim().parse().map_err(|_| format!("not a rational number: {s:?}"))?;
    if x == BigRational::from_integer(0.into()) {
        return Err("zero is not allowed".into());
    }
    Ok(x)
}

fn with_primes_of(mut places: Vec<PlaceQ>, m: u64) -> Vec<PlaceQ> {
    places.extend(dp4brauer::arith::prime_divisors_u64(m).into_iter().map(PlaceQ::Prime));
    places.sort();
    places.dedup();
    places
}

/// `(a, b)_v` at every place where it can be nontrivial, and their product.
pub fn hilbert_json(a: &str, b: &str) -> Result<Value, String> {
    let (a, b) = (rational(a)?, rational(b)?);
    let mut product = 1;
    let mut rows = vec![];
    for v in bad_places(&[&a, &b]) {
        let s = hilbert_qp(&a, &b, v);
        product *= s as i32;
        rows.push(json!({ "place": v.to_string(), "symbol": s }));
    }
    Ok(json!({ "a": a.to_string(), "b": b.to_string(), "places": rows, "product": product }))
}

/// Local invariants of the cyclic algebra `(ℚ(ζ_m)/ℚ, σ_g, a)` read off the
/// local Artin map, where `(ℤ/m)*` is cyclic with generator `g`.
pub fn artin_json(a: &str, m: u64, g: u64) -> Result<Value, String> {
    let a = rational(a)?;
    if m < 3 {
        return Err("m must be at least 3".into());
    }
    let q = CyclicQuotient::new(CyclotomicQuotient::full(m), g).map_err(|e| format!("generator {g} mod {m}: {e}"))?;
    let mut total = QmodZ::zero();
    let mut rows = vec![];
    for v in with_primes_of(bad_places(&[&a]), m) {
        let c = artin_cyclotomic(&a, v, &q.quot);
        let inv = cyclic_symbol_invariant(&q, c).map_err(|e| e.to_string())?;
        total = total + inv;
        rows.push(json!({ "place": v.to_string(), "coset": c, "invariant": inv.to_string() }));
    }
    Ok(json!({ "order": q.order, "places": rows, "sum": total.to_string() }))
}

/// `ev_{α,v}(x)` for the first recipe of a fixture at every place where it
/// can be nonzero.
pub fn evaluate_json(fixture: &str, point: &str) -> Result<Value, String> {
    let fx = fixtures::by_id(fixture).ok_or_else(|| format!("unknown fixture {fixture:?}"))?;
    let coords: Vec<i64> = point
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| format!("bad coordinate {t:?}")))
        .collect::<Result<_, _>>()?;
    let x: [i64; 5] = coords.try_into().map_err(|_| "a point has five coordinates".to_string())?;
    let x = RatPoint::new(x).ok_or("the zero vector is not a point")?;
    if !fx.surface.contains(&x.0) {
        return Err(format!("{x} is not on {fixture}"));
    }
    let (name, recipe) = &fx.recipes[0];
    let vals = evaluate_all_places(recipe, &x).map_err(|e| e.to_string())?;
    let sum: QmodZ = vals.iter().map(|(_, q)| *q).sum();
    let rows: Vec<Value> = vals.iter().map(|(v, q)| json!({ "place": v.to_string(), "value": q.to_string() })).collect();
    Ok(json!({ "point": x.to_string(), "recipe": name, "places": rows, "sum": sum.to_string() }))
}

/// Fixture ids with their listed points, for the page's picker.
pub fn fixtures_json() -> Value {
    Value::Array(
        fixtures::all()
            .iter()
            .map(|f| json!({ "id": f.id, "points": f.listed_points.iter().map(|p| p.0.to_vec()).collect::<Vec<_>>() }))
            .collect(),
    )
}

fn js(r: Result<Value, String>) -> Result<String, JsError> {
    r.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn hilbert(a: &str, b: &str) -> Result<String, JsError> {
    js(hilbert_json(a, b))
}

#[wasm_bindgen]
pub fn artin(a: &str, m: u32, g: u32) -> Result<String, JsError> {
    js(artin_json(a, m as u64, g as u64))
}

#[wasm_bindgen]
pub fn evaluate(fixture: &str, point: &str) -> Result<String, JsError> {
    js(evaluate_json(fixture, point))
}

#[wasm_bindgen(js_name = fixtureList)]
pub fn fixture_list() -> String {
    fixtures_json().to_string()
}
